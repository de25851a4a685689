#pragma once

#include <cstdint>
#include <vector>

#include "pnelect/metrics.hpp"
#include "pnelect/objectives.hpp"
#include "pnelect/types.hpp"

namespace pnelect {

inline constexpr std::uint64_t kDefaultEnumerationBound = 10'000'000;

struct SolveOptions {
    // Exact enumeration refuses instances with C(n, k) above this (too_large).
    std::uint64_t enumeration_bound = kDefaultEnumerationBound;
    // Worker threads for the enumeration scan; 0 picks automatically. Results
    // are identical for every thread count.
    int threads = 0;
    // Also materialize the full per-committee score table.
    bool with_scores = false;
};

// Evaluates every committee's histogram under the given variant and returns
// all committees achieving the minimal key, in canonical order.
ElectionResult elect_exact(const BallotProfile& profile, int k, KeyVariant variant,
                           double p = 0.0, const SolveOptions& options = {});

// Analytic fast path: seats the k candidates with the most approvals (binary)
// or the highest net approvals a_i - r_i (ternary). Ties at the k-th seat
// expand into every committee they generate. Winner set always equals
// elect_exact at p = 1.
ElectionResult elect_minisum(const BallotProfile& profile, int k,
                             const SolveOptions& options = {});

// elect_exact under max_distance_lex, with covered-voter counts attached.
ElectionResult elect_max_cover(const BallotProfile& profile, int k,
                               const SolveOptions& options = {});

// Greedy cover approximation, the large-instance path: each round seats the
// candidate that guarantees coverage for the most additional voters. Ties go
// to the candidate with more total approvals, then the lower index. Returns a
// single committee with its coverage.
ElectionResult elect_greedy_cover(const BallotProfile& profile, int k);

enum class SweepReport { norm, power_sum };

// Per-committee, per-p score matrix with the per-column minimizers flagged.
struct SweepMatrix {
    std::vector<double> ps;
    SweepReport report = SweepReport::norm;
    std::vector<Committee> committees;            // canonical order
    std::vector<std::vector<double>> values;      // values[row][column]
    std::vector<std::vector<std::size_t>> minimizers;  // per column: tied row indices
    std::vector<std::string> warnings;
};

SweepMatrix sweep(const BallotProfile& profile, int k, const std::vector<double>& ps,
                  SweepReport report = SweepReport::norm, const SolveOptions& options = {});

}  // namespace pnelect
