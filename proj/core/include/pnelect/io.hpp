#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "pnelect/solvers.hpp"
#include "pnelect/types.hpp"

namespace pnelect {

// The three on-disk ballot representations. Full byte-level grammar is in the
// README; the short version:
//
//   matrix_csv    header row of candidate names (optionally preceded by a
//                 "weight" column), one row per ballot, cells in {-1,0,1}
//   compact_text  lines "<weight>: <token> ...", token = Name, +Name, -Name;
//                 optional "candidates:" roster line, '#' comments
//   json_lines    one JSON object per ballot {"weight": w, "opinions": {...}},
//                 optional leading {"candidates": [...]} line
enum class BallotFormat { matrix_csv, compact_text, json_lines };

enum class OutputFormat { table, csv, json };

struct ParseOptions {
    // Unset: infer (any -1 entry means ternary).
    std::optional<Mode> mode;
    std::optional<int> opinion_budget;
    // Drop a budget directive found in the file instead of honoring it.
    bool ignore_file_budget = false;
};

BallotProfile parse_ballots(std::istream& source, BallotFormat format,
                            const ParseOptions& options = {});
BallotProfile parse_ballots(const std::string& text, BallotFormat format,
                            const ParseOptions& options = {});

// Picks the format from the file extension (.csv, .txt, .jsonl) or, failing
// that, from a peek at the content.
BallotProfile parse_ballots_file(const std::string& path,
                                 std::optional<BallotFormat> format = std::nullopt,
                                 const ParseOptions& options = {});

// Serializes a profile so that parsing the output reproduces it exactly.
std::string write_ballots(const BallotProfile& profile, BallotFormat format);

std::string format_committee(const Committee& committee, const CandidateRoster& roster);

// table: human-readable, scores rounded to 2 decimals, winners marked.
// csv/json: lossless, shortest round-trip decimals, tie lists and warnings
// included.
std::string write_result(const ElectionResult& result, const BallotProfile& profile,
                         OutputFormat format);

std::string write_sweep(const SweepMatrix& matrix, const BallotProfile& profile,
                        OutputFormat format);

// Side-by-side method comparison: winner set, coverage, and the winners'
// distance histograms per method, with disagreements called out.
std::string write_comparison(const std::vector<ElectionResult>& results,
                             const BallotProfile& profile, OutputFormat format);

}  // namespace pnelect
