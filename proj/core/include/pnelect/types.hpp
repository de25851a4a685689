#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pnelect/errors.hpp"

namespace pnelect {

// Whether ballots carry approvals only (0/1) or approvals and rejections
// (-1/0/+1). Binary ballots are valid ternary ballots; the mode decides which
// distance metric and committee encoding apply.
enum class Mode { binary, ternary };

std::string to_string(Mode mode);

// Ordered list of unique candidate names. Candidate identity is the name;
// the index of a name in roster order is the internal handle used everywhere
// else. Names must be non-empty, contain no whitespace or ':', and must not
// start with '+' or '-' (those characters are reserved by the compact ballot
// file format).
class CandidateRoster {
  public:
    explicit CandidateRoster(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int index) const { return names_.at(static_cast<std::size_t>(index)); }

    // Throws unknown_candidate if the name is not in the roster.
    int index_of(const std::string& name) const;
    std::optional<int> find(const std::string& name) const;

    bool operator==(const CandidateRoster& other) const { return names_ == other.names_; }

  private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

// One distinct opinion vector together with the number of voters who cast it.
// Opinions are -1 (reject), 0 (no opinion), +1 (approve). Approval and
// rejection bitmasks are precomputed so distance kernels run on word-sized
// popcounts instead of per-candidate loops.
class Ballot {
  public:
    Ballot(std::vector<std::int8_t> opinions, std::int64_t weight);

    int length() const { return static_cast<int>(opinions_.size()); }
    std::int64_t weight() const { return weight_; }
    const std::vector<std::int8_t>& opinions() const { return opinions_; }

    int approval_count() const { return approvals_; }
    int rejection_count() const { return rejections_; }
    int opinion_count() const { return approvals_ + rejections_; }
    bool is_binary() const { return rejections_ == 0; }

    const std::vector<std::uint64_t>& approve_mask() const { return approve_mask_; }
    const std::vector<std::uint64_t>& reject_mask() const { return reject_mask_; }

    bool same_opinions(const Ballot& other) const { return opinions_ == other.opinions_; }
    Ballot with_weight(std::int64_t weight) const { return Ballot(opinions_, weight); }

  private:
    std::vector<std::int8_t> opinions_;
    std::int64_t weight_;
    int approvals_ = 0;
    int rejections_ = 0;
    std::vector<std::uint64_t> approve_mask_;
    std::vector<std::uint64_t> reject_mask_;
};

// A committee of k distinct candidates, kept as strictly increasing indices.
// That sorted order doubles as the canonical committee order used for
// deterministic tie-breaking across the whole library.
class Committee {
  public:
    Committee(std::vector<int> members, int candidate_count);

    int candidate_count() const { return n_; }
    int size() const { return static_cast<int>(members_.size()); }
    const std::vector<int>& members() const { return members_; }
    bool contains(int candidate) const;
    const std::vector<std::uint64_t>& mask() const { return mask_; }

    // 0/1 per candidate (binary-mode encoding).
    std::vector<int> binary_encoding() const;
    // +1 for members, -1 for everyone else (ternary-mode encoding).
    std::vector<int> ternary_encoding() const;

    bool operator==(const Committee& other) const {
        return n_ == other.n_ && members_ == other.members_;
    }
    // Canonical (lexicographic) order on sorted member indices.
    bool operator<(const Committee& other) const { return members_ < other.members_; }

  private:
    int n_;
    std::vector<int> members_;
    std::vector<std::uint64_t> mask_;
};

// A full election input: roster, deduplicated weighted ballots, mode, and the
// optional opinion budget (the fixed number of non-zero entries every ballot
// must carry). Immutable after construction; per-candidate approval and
// rejection tallies are precomputed.
class BallotProfile {
  public:
    BallotProfile(CandidateRoster roster, std::vector<Ballot> ballots, Mode mode,
                  std::optional<int> opinion_budget);

    const CandidateRoster& roster() const { return roster_; }
    const std::vector<Ballot>& ballots() const { return ballots_; }
    Mode mode() const { return mode_; }
    std::optional<int> opinion_budget() const { return opinion_budget_; }

    int candidate_count() const { return roster_.size(); }
    std::int64_t voter_count() const { return voter_count_; }  // m

    std::int64_t approvals(int candidate) const;
    std::int64_t rejections(int candidate) const;
    std::int64_t net_approvals(int candidate) const;

    bool operator==(const BallotProfile& other) const;

  private:
    CandidateRoster roster_;
    std::vector<Ballot> ballots_;
    Mode mode_;
    std::optional<int> opinion_budget_;
    std::int64_t voter_count_ = 0;
    std::vector<std::int64_t> approvals_;
    std::vector<std::int64_t> rejections_;
};

using RawBallot = std::pair<std::vector<std::int8_t>, std::int64_t>;

// Merges identical opinion vectors by summing weights (first-occurrence
// order), computes m, and validates every profile invariant.
BallotProfile build_profile(CandidateRoster roster, const std::vector<RawBallot>& raw_ballots,
                            Mode mode, std::optional<int> opinion_budget = std::nullopt);

// Counts of voters at each distance from one committee. nu(d) is the number
// of voters whose ballot lies at distance d; total() is m.
class DistanceHistogram {
  public:
    DistanceHistogram() = default;
    DistanceHistogram(std::map<int, std::int64_t> counts, std::int64_t total);

    const std::map<int, std::int64_t>& counts() const { return counts_; }
    std::int64_t total() const { return total_; }
    std::int64_t nu(int distance) const;
    // Largest distance with a positive count; 0 for an empty histogram.
    int max_distance() const;

    bool operator==(const DistanceHistogram& other) const = default;

  private:
    std::map<int, std::int64_t> counts_;
    std::int64_t total_ = 0;
};

enum class Rule { pnorm, minisum, minimax, max_cover, greedy, p_zero };

// Election rule descriptor; p is meaningful only for Rule::pnorm.
struct Method {
    Rule rule = Rule::pnorm;
    double p = 0.0;

    std::string name() const;
    bool operator==(const Method& other) const = default;
};

struct ScoreRow {
    Committee committee;
    double score;
    bool winner;
};

// Outcome of one election. All tied optima are reported in canonical order;
// callers who need a single committee take winners.front().
struct ElectionResult {
    Method method;
    std::vector<Committee> winners;
    bool tie_flag = false;  // true iff winners.size() > 1
    // Rule-dependent scalar for the winning committees: p-norm value (pnorm),
    // total distance (minisum), maximum distance (minimax), m - nu_0 (p_zero),
    // covered voters (max_cover, greedy). Unset when no single scalar applies.
    std::optional<double> best_score;
    // Covered-voter count per winner, populated by the coverage rules.
    std::vector<std::int64_t> coverages;
    // Full score table in canonical committee order, when requested.
    std::optional<std::vector<ScoreRow>> scores;
    std::vector<std::string> warnings;
};

}  // namespace pnelect
