#include "pnelect/types.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace pnelect {

std::string to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::wrong_length: return "WrongLength";
        case ErrorCode::negative_weight: return "NegativeWeight";
        case ErrorCode::budget_violation: return "BudgetViolation";
        case ErrorCode::mode_violation: return "ModeViolation";
        case ErrorCode::invalid_roster: return "InvalidRoster";
        case ErrorCode::invalid_k: return "InvalidK";
        case ErrorCode::too_large: return "TooLarge";
        case ErrorCode::invalid_p: return "InvalidP";
        case ErrorCode::variant_mismatch: return "VariantMismatch";
        case ErrorCode::mode_mismatch: return "ModeMismatch";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::unknown_candidate: return "UnknownCandidate";
        case ErrorCode::duplicate_candidate: return "DuplicateCandidateHeader";
    }
    return "UnknownError";
}

std::string to_string(Mode mode) {
    return mode == Mode::binary ? "binary" : "ternary";
}

namespace {

bool valid_candidate_name(const std::string& name) {
    if (name.empty()) return false;
    if (name.front() == '+' || name.front() == '-') return false;
    for (unsigned char c : name) {
        if (std::isspace(c) || c == ':' || c == ',') return false;
    }
    return true;
}

std::vector<std::uint64_t> pack_mask(const std::vector<std::int8_t>& opinions,
                                     std::int8_t value) {
    std::vector<std::uint64_t> mask((opinions.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < opinions.size(); ++i) {
        if (opinions[i] == value) mask[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    return mask;
}

}  // namespace

CandidateRoster::CandidateRoster(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) fail(ErrorCode::invalid_roster, "a roster needs at least one candidate");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!valid_candidate_name(names_[i])) {
            fail(ErrorCode::invalid_roster,
                 "candidate name '" + names_[i] +
                     "' is empty or uses reserved characters (whitespace, ':', ',', leading '+'/'-')");
        }
        auto [it, inserted] = index_.emplace(names_[i], static_cast<int>(i));
        if (!inserted) fail(ErrorCode::invalid_roster, "duplicate candidate name '" + names_[i] + "'");
    }
}

int CandidateRoster::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) fail(ErrorCode::unknown_candidate, "no candidate named '" + name + "'");
    return it->second;
}

std::optional<int> CandidateRoster::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Ballot::Ballot(std::vector<std::int8_t> opinions, std::int64_t weight)
    : opinions_(std::move(opinions)), weight_(weight) {
    if (weight_ < 1) {
        fail(ErrorCode::negative_weight,
             "ballot weight must be at least 1, got " + std::to_string(weight_));
    }
    if (opinions_.empty()) fail(ErrorCode::wrong_length, "ballot has no opinion entries");
    for (std::int8_t o : opinions_) {
        if (o < -1 || o > 1) {
            fail(ErrorCode::mode_violation,
                 "opinion entries must be -1, 0, or 1, got " + std::to_string(int(o)));
        }
        if (o == 1) ++approvals_;
        if (o == -1) ++rejections_;
    }
    approve_mask_ = pack_mask(opinions_, 1);
    reject_mask_ = pack_mask(opinions_, -1);
}

Committee::Committee(std::vector<int> members, int candidate_count)
    : n_(candidate_count), members_(std::move(members)) {
    if (n_ < 1) fail(ErrorCode::invalid_k, "candidate count must be positive");
    if (members_.empty() || static_cast<int>(members_.size()) > n_) {
        fail(ErrorCode::invalid_k, "committee size must be in [1, " + std::to_string(n_) + "]");
    }
    std::sort(members_.begin(), members_.end());
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i] < 0 || members_[i] >= n_) {
            fail(ErrorCode::invalid_k, "member index " + std::to_string(members_[i]) + " out of range");
        }
        if (i > 0 && members_[i] == members_[i - 1]) {
            fail(ErrorCode::invalid_k, "duplicate member index " + std::to_string(members_[i]));
        }
    }
    mask_.assign((static_cast<std::size_t>(n_) + 63) / 64, 0);
    for (int m : members_) mask_[static_cast<std::size_t>(m) / 64] |= std::uint64_t{1} << (m % 64);
}

bool Committee::contains(int candidate) const {
    if (candidate < 0 || candidate >= n_) return false;
    return (mask_[static_cast<std::size_t>(candidate) / 64] >> (candidate % 64)) & 1;
}

std::vector<int> Committee::binary_encoding() const {
    std::vector<int> code(static_cast<std::size_t>(n_), 0);
    for (int m : members_) code[static_cast<std::size_t>(m)] = 1;
    return code;
}

std::vector<int> Committee::ternary_encoding() const {
    std::vector<int> code(static_cast<std::size_t>(n_), -1);
    for (int m : members_) code[static_cast<std::size_t>(m)] = 1;
    return code;
}

BallotProfile::BallotProfile(CandidateRoster roster, std::vector<Ballot> ballots, Mode mode,
                             std::optional<int> opinion_budget)
    : roster_(std::move(roster)),
      ballots_(std::move(ballots)),
      mode_(mode),
      opinion_budget_(opinion_budget) {
    const int n = roster_.size();
    if (opinion_budget_ && (*opinion_budget_ < 1 || *opinion_budget_ > n)) {
        fail(ErrorCode::budget_violation,
             "opinion budget must be in [1, " + std::to_string(n) + "]");
    }
    approvals_.assign(static_cast<std::size_t>(n), 0);
    rejections_.assign(static_cast<std::size_t>(n), 0);
    std::set<std::vector<std::int8_t>> seen;
    for (const Ballot& ballot : ballots_) {
        if (ballot.length() != n) {
            fail(ErrorCode::wrong_length, "ballot has " + std::to_string(ballot.length()) +
                                              " entries for a roster of " + std::to_string(n));
        }
        if (mode_ == Mode::binary && !ballot.is_binary()) {
            fail(ErrorCode::mode_violation, "rejection entry in a binary profile");
        }
        if (opinion_budget_ && ballot.opinion_count() != *opinion_budget_) {
            fail(ErrorCode::budget_violation,
                 "ballot carries " + std::to_string(ballot.opinion_count()) +
                     " opinions, budget is " + std::to_string(*opinion_budget_));
        }
        if (!seen.insert(ballot.opinions()).second) {
            fail(ErrorCode::parse_error, "duplicate opinion vector in profile (merge first)");
        }
        voter_count_ += ballot.weight();
        for (int i = 0; i < n; ++i) {
            if (ballot.opinions()[static_cast<std::size_t>(i)] == 1)
                approvals_[static_cast<std::size_t>(i)] += ballot.weight();
            if (ballot.opinions()[static_cast<std::size_t>(i)] == -1)
                rejections_[static_cast<std::size_t>(i)] += ballot.weight();
        }
    }
}

std::int64_t BallotProfile::approvals(int candidate) const {
    return approvals_.at(static_cast<std::size_t>(candidate));
}

std::int64_t BallotProfile::rejections(int candidate) const {
    return rejections_.at(static_cast<std::size_t>(candidate));
}

std::int64_t BallotProfile::net_approvals(int candidate) const {
    return approvals(candidate) - rejections(candidate);
}

bool BallotProfile::operator==(const BallotProfile& other) const {
    if (!(roster_ == other.roster_) || mode_ != other.mode_ ||
        opinion_budget_ != other.opinion_budget_ || ballots_.size() != other.ballots_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < ballots_.size(); ++i) {
        if (!ballots_[i].same_opinions(other.ballots_[i]) ||
            ballots_[i].weight() != other.ballots_[i].weight()) {
            return false;
        }
    }
    return true;
}

BallotProfile build_profile(CandidateRoster roster, const std::vector<RawBallot>& raw_ballots,
                            Mode mode, std::optional<int> opinion_budget) {
    const int n = roster.size();
    std::vector<std::vector<std::int8_t>> vectors;
    std::vector<std::int64_t> weights;
    std::map<std::vector<std::int8_t>, std::size_t> slot;
    for (const auto& [opinions, weight] : raw_ballots) {
        if (static_cast<int>(opinions.size()) != n) {
            fail(ErrorCode::wrong_length, "ballot has " + std::to_string(opinions.size()) +
                                              " entries for a roster of " + std::to_string(n));
        }
        if (weight < 1) {
            fail(ErrorCode::negative_weight,
                 "ballot weight must be at least 1, got " + std::to_string(weight));
        }
        auto [it, inserted] = slot.emplace(opinions, vectors.size());
        if (inserted) {
            vectors.push_back(opinions);
            weights.push_back(weight);
        } else {
            weights[it->second] += weight;
        }
    }
    std::vector<Ballot> ballots;
    ballots.reserve(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        ballots.emplace_back(std::move(vectors[i]), weights[i]);
    }
    return BallotProfile(std::move(roster), std::move(ballots), mode, opinion_budget);
}

DistanceHistogram::DistanceHistogram(std::map<int, std::int64_t> counts, std::int64_t total)
    : counts_(std::move(counts)), total_(total) {
    std::int64_t mass = 0;
    for (const auto& [d, count] : counts_) {
        if (d < 0) fail(ErrorCode::wrong_length, "negative distance in histogram");
        if (count <= 0) fail(ErrorCode::negative_weight, "non-positive count in histogram");
        mass += count;
    }
    if (mass != total_) {
        fail(ErrorCode::wrong_length, "histogram mass " + std::to_string(mass) +
                                          " does not match total " + std::to_string(total_));
    }
}

std::int64_t DistanceHistogram::nu(int distance) const {
    auto it = counts_.find(distance);
    return it == counts_.end() ? 0 : it->second;
}

int DistanceHistogram::max_distance() const {
    return counts_.empty() ? 0 : counts_.rbegin()->first;
}

std::string Method::name() const {
    switch (rule) {
        case Rule::pnorm: {
            std::ostringstream out;
            out << "pnorm(p=" << p << ")";
            return out.str();
        }
        case Rule::minisum: return "minisum";
        case Rule::minimax: return "minimax";
        case Rule::max_cover: return "maxcover";
        case Rule::greedy: return "greedy";
        case Rule::p_zero: return "p0";
    }
    return "unknown";
}

}  // namespace pnelect
