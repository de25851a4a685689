#include "pnelect/metrics.hpp"

#include <bit>
#include <string>

namespace pnelect {

namespace {

void check_length(const Ballot& ballot, const Committee& committee) {
    if (ballot.length() != committee.candidate_count()) {
        fail(ErrorCode::wrong_length,
             "ballot length " + std::to_string(ballot.length()) +
                 " does not match candidate count " +
                 std::to_string(committee.candidate_count()));
    }
}

int mask_overlap(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    int total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        total += std::popcount(a[i] & b[i]);
    }
    return total;
}

}  // namespace

int hamming_distance(const Ballot& ballot, const Committee& committee) {
    check_length(ballot, committee);
    if (!ballot.is_binary()) {
        fail(ErrorCode::mode_mismatch, "hamming distance is defined for approval-only ballots");
    }
    const int overlap = mask_overlap(ballot.approve_mask(), committee.mask());
    return (ballot.approval_count() - overlap) + (committee.size() - overlap);
}

int ternary_distance(const Ballot& ballot, const Committee& committee) {
    check_length(ballot, committee);
    const int approved_seated = mask_overlap(ballot.approve_mask(), committee.mask());
    const int rejected_seated = mask_overlap(ballot.reject_mask(), committee.mask());
    const int contradicted =
        (ballot.approval_count() - approved_seated) + rejected_seated;
    return (ballot.length() - ballot.opinion_count()) + 2 * contradicted;
}

int profile_distance(const BallotProfile& profile, const Ballot& ballot,
                     const Committee& committee) {
    return profile.mode() == Mode::binary ? hamming_distance(ballot, committee)
                                          : ternary_distance(ballot, committee);
}

DistanceHistogram distance_histogram(const BallotProfile& profile, const Committee& committee) {
    std::map<int, std::int64_t> counts;
    for (const Ballot& ballot : profile.ballots()) {
        counts[profile_distance(profile, ballot, committee)] += ballot.weight();
    }
    return DistanceHistogram(std::move(counts), profile.voter_count());
}

bool is_covered(const Ballot& ballot, const Committee& committee, Mode mode) {
    check_length(ballot, committee);
    const int approved_seated = mask_overlap(ballot.approve_mask(), committee.mask());
    if (approved_seated > 0) return true;
    if (mode == Mode::binary) return false;
    const int rejected_seated = mask_overlap(ballot.reject_mask(), committee.mask());
    return ballot.rejection_count() - rejected_seated > 0;
}

std::int64_t covered_count(const BallotProfile& profile, const Committee& committee) {
    std::int64_t total = 0;
    for (const Ballot& ballot : profile.ballots()) {
        if (is_covered(ballot, committee, profile.mode())) total += ballot.weight();
    }
    return total;
}

}  // namespace pnelect
