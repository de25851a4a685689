#pragma once

// Canonical in-memory ballot profiles used across the test suite.  Each
// builder returns a freshly constructed profile so tests can mutate their
// copy without affecting other cases.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "pnelect/types.hpp"

namespace pnelect::testing {

inline BallotProfile make_profile(std::vector<std::string> names,
                                  std::vector<std::pair<std::vector<std::int8_t>, std::int64_t>> rows,
                                  Mode mode = Mode::binary,
                                  std::optional<int> budget = std::nullopt) {
    CandidateRoster roster(std::move(names));
    std::vector<RawBallot> raw;
    raw.reserve(rows.size());
    for (auto& [opinions, weight] : rows) {
        raw.push_back(RawBallot{std::move(opinions), weight});
    }
    return build_profile(std::move(roster), raw, mode, budget);
}

// Two ideological blocs {A1,A2} and {B1,B2}; every voter approves exactly two
// candidates.  1000 voters total.
inline BallotProfile two_blocs() {
    return make_profile({"A1", "A2", "B1", "B2"},
                        {
                            {{1, 1, 0, 0}, 500},
                            {{1, 0, 1, 0}, 100},
                            {{1, 0, 0, 1}, 10},
                            {{0, 1, 1, 0}, 20},
                            {{0, 1, 0, 1}, 20},
                            {{0, 0, 1, 1}, 350},
                        },
                        Mode::binary, 2);
}

// Same roster, different weights: A1 leads the approval tally by a wide
// margin while A2 trails everyone, yet {A1,A2} has the largest fully
// satisfied cohort.  1000 voters total.
inline BallotProfile front_runner() {
    return make_profile({"A1", "A2", "B1", "B2"},
                        {
                            {{1, 1, 0, 0}, 300},
                            {{1, 0, 1, 0}, 250},
                            {{1, 0, 0, 1}, 150},
                            {{0, 1, 1, 0}, 40},
                            {{0, 1, 0, 1}, 60},
                            {{0, 0, 1, 1}, 200},
                        },
                        Mode::binary, 2);
}

// The two-bloc electorate after the 500-voter bloc switches from approving
// {A1,A2} to approving A1 and rejecting B1.
inline BallotProfile two_blocs_ternary() {
    return make_profile({"A1", "A2", "B1", "B2"},
                        {
                            {{1, 0, -1, 0}, 500},
                            {{1, 0, 1, 0}, 100},
                            {{1, 0, 0, 1}, 10},
                            {{0, 1, 1, 0}, 20},
                            {{0, 1, 0, 1}, 20},
                            {{0, 0, 1, 1}, 350},
                        },
                        Mode::ternary, 2);
}

// Four unweighted voters over five candidates; approval counts are
// A:3 B:3 C:2 D:2 E:2, so minisum elects {A,B} while minimax ties four
// committees.
inline BallotProfile five_candidates() {
    return make_profile({"A", "B", "C", "D", "E"},
                        {
                            {{1, 1, 0, 0, 1}, 1},
                            {{1, 1, 0, 0, 0}, 1},
                            {{1, 1, 1, 1, 0}, 1},
                            {{0, 0, 1, 1, 1}, 1},
                        });
}

// 998 voters approve {A1,A2}; one voter approves {A1,B2} and one {B1,B2}.
// Under minimax only committees sharing a member with every single ballot
// stay at max distance 2, so the 998-voter favourite {A1,A2} loses to
// {A1,B1}, {A1,B2}, and {A2,B2}.
inline BallotProfile swing() {
    return make_profile({"A1", "A2", "B1", "B2"},
                        {
                            {{1, 1, 0, 0}, 998},
                            {{1, 0, 0, 1}, 1},
                            {{0, 0, 1, 1}, 1},
                        },
                        Mode::binary, 2);
}

inline Committee committee_of(const BallotProfile& profile, std::initializer_list<const char*> names) {
    std::vector<int> members;
    for (const char* name : names) {
        members.push_back(profile.roster().index_of(name));
    }
    return Committee(members, profile.roster().size());
}

inline std::vector<std::string> member_names(const BallotProfile& profile, const Committee& committee) {
    std::vector<std::string> names;
    for (int member : committee.members()) {
        names.push_back(profile.roster().name(member));
    }
    return names;
}

}  // namespace pnelect::testing
