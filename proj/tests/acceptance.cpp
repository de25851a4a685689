// Acceptance gate: end-to-end checks of the shipped solvers against pinned
// election results on the bundled data files. Prints one PASS/FAIL line per
// criterion and exits non-zero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "property_suite.hpp"
#include "pnelect/io.hpp"
#include "pnelect/solvers.hpp"

using namespace pnelect;
using namespace pnelect::testing;

#ifndef PNELECT_DATA_DIR
#error "PNELECT_DATA_DIR must point at the repository's data directory"
#endif

namespace {

const std::string kDataDir = PNELECT_DATA_DIR;

struct Checker {
    std::ostringstream log;
    bool ok = true;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            log << "      " << what << '\n';
        }
    }

    void expect_close(double actual, double expected, const std::string& what,
                      double tolerance = 0.01) {
        if (!(std::abs(actual - expected) <= tolerance)) {
            ok = false;
            char buffer[160];
            std::snprintf(buffer, sizeof(buffer), "      %s: got %.6f, expected %.6f\n",
                          what.c_str(), actual, expected);
            log << buffer;
        }
    }
};

int g_passed = 0;
int g_failed = 0;

void criterion(const std::string& title, const std::function<void(Checker&)>& body) {
    Checker check;
    double seconds = 0.0;
    try {
        const auto start = std::chrono::steady_clock::now();
        body(check);
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } catch (const std::exception& error) {
        check.ok = false;
        check.log << "      unexpected exception: " << error.what() << '\n';
    }
    if (check.ok) {
        ++g_passed;
        std::printf("PASS  %s (%.2fs)\n", title.c_str(), seconds);
    } else {
        ++g_failed;
        std::printf("FAIL  %s\n%s", title.c_str(), check.log.str().c_str());
    }
    std::fflush(stdout);
}

std::string names_of(const BallotProfile& profile, const Committee& committee) {
    return format_committee(committee, profile.roster());
}

void check_sweep(Checker& check, const BallotProfile& profile, const std::vector<double>& ps,
                 SweepReport report, const std::vector<std::vector<double>>& expected,
                 const std::vector<std::vector<std::string>>& expected_minimizers) {
    SweepMatrix matrix = sweep(profile, 2, ps, report);
    check.expect(matrix.committees.size() == expected.size(), "unexpected committee count");
    if (matrix.committees.size() != expected.size()) return;
    for (std::size_t row = 0; row < expected.size(); ++row) {
        for (std::size_t column = 0; column < ps.size(); ++column) {
            std::ostringstream what;
            what << names_of(profile, matrix.committees[row]) << " at p=" << ps[column];
            check.expect_close(matrix.values[row][column], expected[row][column], what.str());
        }
    }
    for (std::size_t column = 0; column < ps.size(); ++column) {
        std::vector<std::string> winners;
        for (std::size_t row : matrix.minimizers[column]) {
            winners.push_back(names_of(profile, matrix.committees[row]));
        }
        std::ostringstream what;
        what << "minimizers at p=" << ps[column];
        check.expect(winners == expected_minimizers[column],
                     what.str() + " differ from the pinned committees");
    }
    check.expect(matrix.warnings.empty(), "unexpected sweep warnings");
}

}  // namespace

int main() {
    std::printf("acceptance checks (data: %s)\n", kDataDir.c_str());

    criterion("two-bloc profile: p-norm table for p in {1,2,3,4,10,100} and its minimizers, under 1s",
              [](Checker& check) {
        const auto start = std::chrono::steady_clock::now();
        BallotProfile profile = parse_ballots_file(kDataDir + "/two_blocs.txt");
        check.expect(profile.voter_count() == 1000, "voter count is not 1000");
        check_sweep(check, profile, {1, 2, 3, 4, 10, 100}, SweepReport::norm,
                    {
                        {1700, 78.74, 28.68, 17.42, 7.19, 4.24},    // {A1,A2}
                        {1840, 61.97, 20.26, 11.77, 5.42, 4.12},    // {A1,B1}
                        {2020, 64.81, 20.83, 11.99, 5.42, 4.12},    // {A1,B2}
                        {1980, 63.56, 20.33, 11.60, 5.08, 4.09},    // {A2,B1}
                        {2160, 71.55, 23.78, 14.11, 6.34, 4.19},    // {A2,B2}
                        {2300, 92.74, 32.14, 19.00, 7.45, 4.26},    // {B1,B2}
                    },
                    {
                        {"{A1,A2}"},
                        {"{A1,B1}"},
                        {"{A1,B1}"},
                        {"{A2,B1}"},
                        {"{A2,B1}"},
                        {"{A2,B1}"},
                    });
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        check.expect(seconds < 1.0, "took " + std::to_string(seconds) + "s, budget is 1s");
    });

    criterion("front-runner profile: power sums for p in {1,0.5,0.1,0.001} switch the winner to the largest bloc",
              [](Checker& check) {
        BallotProfile profile = parse_ballots_file(kDataDir + "/front_runner.txt");
        check_sweep(check, profile, {1, 0.5, 0.1, 0.001}, SweepReport::power_sum,
                    {
                        {1800, 1107.11, 765.63, 700.62},    // {A1,A2}
                        {1620, 1095.81, 808.45, 750.56},    // {A1,B1}
                        {1780, 1225.51, 914.08, 850.62},    // {A1,B2}
                        {2220, 1445.51, 1040.44, 960.77},   // {A2,B1}
                        {2380, 1475.81, 1026.70, 940.83},   // {A2,B2}
                        {2200, 1307.11, 880.50, 800.76},    // {B1,B2}
                    },
                    {
                        {"{A1,B1}"},
                        {"{A1,B1}"},
                        {"{A1,A2}"},
                        {"{A1,A2}"},
                    });
    });

    criterion("ternary two-bloc profile: rejections flip every p to {A1,B2}",
              [](Checker& check) {
        BallotProfile profile = parse_ballots_file(kDataDir + "/two_blocs_ternary.txt");
        check.expect(profile.mode() == Mode::ternary, "profile did not parse as ternary");
        check_sweep(check, profile, {1, 2, 3, 4, 10, 100}, SweepReport::norm,
                    {
                        {3700, 130.38, 44.68, 26.59, 10.79, 6.36},   // {A1,A2}
                        {3840, 123.29, 39.46, 22.42, 8.57, 6.18},    // {A1,B1}
                        {3020, 101.39, 33.76, 19.82, 8.38, 6.18},    // {A1,B2}
                        {4980, 161.12, 51.97, 29.73, 11.21, 6.39},   // {A2,B1}
                        {4160, 133.27, 42.74, 24.41, 9.65, 6.28},    // {A2,B2}
                        {4300, 147.65, 49.38, 28.84, 11.18, 6.38},   // {B1,B2}
                    },
                    {
                        {"{A1,B2}"},
                        {"{A1,B2}"},
                        {"{A1,B2}"},
                        {"{A1,B2}"},
                        {"{A1,B2}"},
                        {"{A1,B2}"},
                    });
    });

    criterion("five-candidate profile: minisum elects {A,B} at total distance 8, minimax ties {A,C} {A,D} {B,C} {B,D} at 3",
              [](Checker& check) {
        BallotProfile profile = parse_ballots_file(kDataDir + "/small_committee.csv");
        check.expect(profile.voter_count() == 4, "voter count is not 4");

        // Distances from each ballot to {A,B}: 1, 0, 2, 5.
        Committee ab = committee_of(profile, {"A", "B"});
        const std::vector<int> expected_distances = {1, 0, 2, 5};
        for (std::size_t i = 0; i < expected_distances.size(); ++i) {
            check.expect(hamming_distance(profile.ballots()[i], ab) == expected_distances[i],
                         "ballot " + std::to_string(i) + " distance to {A,B}");
        }

        ElectionResult minisum = elect_minisum(profile, 2);
        check.expect(minisum.winners.size() == 1 &&
                         names_of(profile, minisum.winners.front()) == "{A,B}",
                     "minisum winner is not {A,B}");
        check.expect(minisum.best_score && *minisum.best_score == 8.0,
                     "minisum total distance is not 8");

        ElectionResult minimax = elect_exact(profile, 2, KeyVariant::minimax);
        std::vector<std::string> tied;
        for (const Committee& committee : minimax.winners) {
            tied.push_back(names_of(profile, committee));
        }
        check.expect(tied == std::vector<std::string>{"{A,C}", "{A,D}", "{B,C}", "{B,D}"},
                     "minimax tie set is not {A,C} {A,D} {B,C} {B,D}");
        check.expect(minimax.best_score && *minimax.best_score == 3.0,
                     "minimax distance is not 3");
        check.expect(committee_members(minimax.winners) == oracle_minimax_winners(profile, 2),
                     "minimax tie set differs from the brute-force reference");
    });

    criterion("coverage rules: exact max cover picks {A2,B1} covering 990 of 1000, greedy picks {A1,B1} covering 980",
              [](Checker& check) {
        BallotProfile profile = parse_ballots_file(kDataDir + "/two_blocs.txt");

        ElectionResult cover = elect_max_cover(profile, 2);
        check.expect(cover.winners.size() == 1 &&
                         names_of(profile, cover.winners.front()) == "{A2,B1}",
                     "max cover winner is not {A2,B1}");
        check.expect(!cover.coverages.empty() && cover.coverages.front() == 990,
                     "max cover coverage is not 990");
        check.expect(oracle_best_coverage(profile, 2) == 990,
                     "reference optimum coverage is not 990");

        check.expect(covered_count(profile, committee_of(profile, {"A1", "B1"})) == 980,
                     "{A1,B1} coverage is not 980");

        ElectionResult greedy = elect_greedy_cover(profile, 2);
        check.expect(greedy.winners.size() == 1 &&
                         names_of(profile, greedy.winners.front()) == "{A1,B1}",
                     "greedy committee is not {A1,B1}");
        check.expect(!greedy.coverages.empty() && greedy.coverages.front() == 980,
                     "greedy coverage is not 980");
    });

    criterion("minimax tie spread: the polarized profile ties all six committees; two swing voters cut the tie to three",
              [](Checker& check) {
        BallotProfile polarized = parse_ballots_file(kDataDir + "/two_blocs.txt");
        ElectionResult wide = elect_exact(polarized, 2, KeyVariant::minimax);
        check.expect(wide.winners.size() == 6, "expected all six committees tied");
        check.expect(wide.best_score && *wide.best_score == 4.0, "tied max distance is not 4");

        BallotProfile swayed = swing();
        ElectionResult narrow = elect_exact(swayed, 2, KeyVariant::minimax);
        std::vector<std::string> tied;
        for (const Committee& committee : narrow.winners) {
            tied.push_back(names_of(swayed, committee));
        }
        check.expect(tied == std::vector<std::string>{"{A1,B1}", "{A1,B2}", "{A2,B2}"},
                     "swing tie set is not {A1,B1} {A1,B2} {A2,B2}");
        check.expect(committee_members(narrow.winners) == oracle_minimax_winners(swayed, 2),
                     "swing tie set differs from the brute-force reference");
        // The committee 998 of 1000 voters approve is not among the winners.
        for (const std::string& name : tied) {
            check.expect(name != "{A1,A2}", "{A1,A2} must lose under minimax");
        }
    });

    criterion("five hundred randomized elections cross-check every solver, under 60s",
              [](Checker& check) {
        const auto start = std::chrono::steady_clock::now();
        const PropertySuiteReport report = run_property_suite(500, 0x5eed5eedULL);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        check.expect(report.instances == 500, "did not run 500 instances");
        for (const std::string& failure : report.failures) {
            check.expect(false, failure);
        }
        check.expect(seconds < 60.0, "took " + std::to_string(seconds) + "s, budget is 60s");
    });

    criterion("ballot files round-trip losslessly in all three formats",
              [](Checker& check) {
        const std::vector<std::string> files = {"two_blocs.txt", "front_runner.txt",
                                                "two_blocs_ternary.txt"};
        for (const std::string& file : files) {
            BallotProfile original = parse_ballots_file(kDataDir + "/" + file);
            for (BallotFormat format : {BallotFormat::matrix_csv, BallotFormat::compact_text,
                                        BallotFormat::json_lines}) {
                BallotProfile reparsed = parse_ballots(write_ballots(original, format), format);
                check.expect(reparsed == original, file + ": round-trip changed the profile");
            }
        }
    });

    std::printf("%d of %d acceptance criteria passed\n", g_passed, g_passed + g_failed);
    return g_failed == 0 ? 0 : 1;
}
