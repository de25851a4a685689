#pragma once

#include "pnelect/types.hpp"

namespace pnelect {

// Hamming distance between a binary ballot and the committee's 0/1 encoding:
// (approvals outside the committee) + (members not approved). Throws
// mode_mismatch for ballots containing rejections and wrong_length on size
// mismatch.
int hamming_distance(const Ballot& ballot, const Committee& committee);

// L1 distance between a ternary ballot and the committee's +-1 encoding:
// each no-opinion entry contributes 1, each contradicted opinion 2. Binary
// ballots are valid inputs (0 entries count as no opinion).
int ternary_distance(const Ballot& ballot, const Committee& committee);

// Distance dispatched on the profile mode.
int profile_distance(const BallotProfile& profile, const Ballot& ballot,
                     const Committee& committee);

// Aggregates ballot weights by distance from the committee. The counts always
// sum to the profile's voter count m.
DistanceHistogram distance_histogram(const BallotProfile& profile, const Committee& committee);

// Whether one voter gets at least one of their opinions honored: in binary
// mode an approved candidate is seated; in ternary mode an approved candidate
// is seated or a rejected candidate is left out. Under the usual budget
// (every ballot carries exactly k opinions) this is the same as the ballot
// being below its maximum possible distance.
bool is_covered(const Ballot& ballot, const Committee& committee, Mode mode);

// Total weight of covered voters.
std::int64_t covered_count(const BallotProfile& profile, const Committee& committee);

}  // namespace pnelect
