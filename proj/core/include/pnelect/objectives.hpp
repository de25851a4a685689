#pragma once

#include <compare>
#include <cstdint>

#include "pnelect/types.hpp"

namespace pnelect {

// The four ways a distance histogram is turned into something comparable:
//
//   finite_p         minimize (sum_d nu_d * d^p)^(1/p) for a finite p > 0
//   p_zero_limit     the p->0 limit: minimize m - nu_0 (maximize exact hits)
//   max_distance_lex the large-p limit: compare counts from the top distance
//                    downward, fewer voters at each step wins (the first step
//                    alone is "maximum coverage")
//   minimax          minimize the largest attained distance, ignoring counts
enum class KeyVariant { finite_p, p_zero_limit, max_distance_lex, minimax };

std::string to_string(KeyVariant variant);

// Largest distance any ballot in this profile can be from any k-committee.
// Committee-independent, so the finite-p comparator may divide by it freely.
int max_scale_distance(const BallotProfile& profile, int k);

// (sum_d nu_d * d^p)^(1/p), evaluated with log-domain summation so large p
// cannot overflow. Throws invalid_p unless 0 < p < infinity.
double pnorm_score(const DistanceHistogram& hist, double p);

// sum_d nu_d * d^p without the 1/p root. The reporting convention for p < 1,
// where the root would blow small values up.
double power_sum(const DistanceHistogram& hist, double p);

// Relative gap below which two finite-p scores are treated as unresolved by
// floating arithmetic and handed to the exact path.
inline constexpr double kRelTolerance = 1e-12;

// Largest integer p for which the exact fallback evaluates sum nu_d * d^p in
// arbitrary-precision integers. Beyond it (and for fractional p) the floating
// verdict stands and a near-tie warning is raised instead.
inline constexpr double kExactFallbackMaxP = 4096.0;

// A committee's standing under one variant. Carries the histogram (the
// principled tie notion: equal histograms tie under every variant and every
// p) plus the precomputed scalar payload for its variant.
class ComparisonKey {
  public:
    static ComparisonKey finite_p(DistanceHistogram hist, double p, int scale_distance);
    static ComparisonKey p_zero_limit(DistanceHistogram hist);
    static ComparisonKey max_distance_lex(DistanceHistogram hist);
    static ComparisonKey minimax(DistanceHistogram hist);

    KeyVariant variant() const { return variant_; }
    const DistanceHistogram& histogram() const { return hist_; }
    double p() const { return p_; }
    int scale_distance() const { return scale_distance_; }
    // finite_p payload: sum_d nu_d * (d/D)^p with D the scale distance.
    double scaled_sum() const { return scaled_sum_; }

  private:
    ComparisonKey(KeyVariant variant, DistanceHistogram hist) : variant_(variant), hist_(std::move(hist)) {}

    KeyVariant variant_;
    DistanceHistogram hist_;
    double p_ = 0.0;
    int scale_distance_ = 1;
    double scaled_sum_ = 0.0;
};

struct KeyComparison {
    std::strong_ordering order = std::strong_ordering::equal;
    // Scores within kRelTolerance of each other while the histograms differ.
    bool near_tie = false;
    // The near tie was settled by exact integer arithmetic rather than left
    // to the floating verdict.
    bool exact_resolved = false;
};

// Total, deterministic order; smaller means better committee. Both keys must
// come from the same variant, p, and voter count, otherwise variant_mismatch.
//
// The finite-p ladder: identical histograms compare equal outright. Scores
// further apart than kRelTolerance take the floating verdict. Near ties fall
// back to exact integer power sums when p is an integer within
// kExactFallbackMaxP; otherwise the floating verdict stands and the result is
// flagged near_tie.
KeyComparison compare_keys(const ComparisonKey& a, const ComparisonKey& b);

// Convenience wrapper returning only the ordering.
std::strong_ordering compare(const ComparisonKey& a, const ComparisonKey& b);

}  // namespace pnelect
