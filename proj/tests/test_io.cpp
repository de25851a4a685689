#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "pnelect/io.hpp"
#include "pnelect/solvers.hpp"

using namespace pnelect;
using namespace pnelect::testing;
using nlohmann::json;

#ifndef PNELECT_DATA_DIR
#error "PNELECT_DATA_DIR must point at the repository's data directory"
#endif

namespace {

const std::string kDataDir = PNELECT_DATA_DIR;

// Writes content to a throwaway file and returns its path; the file is left
// behind in the build directory, which is fine for test scratch space.
std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = "pnelect_io_test_" + name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    return path;
}

void expect_parse_error(const std::string& text, BallotFormat format, const std::string& needle) {
    try {
        (void)parse_ballots(text, format);
        FAIL("expected a parse failure for: " << text);
    } catch (const Error& error) {
        INFO("message: " << error.what());
        CHECK(std::string(error.what()).find(needle) != std::string::npos);
    }
}

}  // namespace

TEST_CASE("every format round-trips every canonical profile") {
    for (const BallotProfile& profile :
         {two_blocs(), front_runner(), two_blocs_ternary(), five_candidates(), swing()}) {
        for (BallotFormat format :
             {BallotFormat::matrix_csv, BallotFormat::compact_text, BallotFormat::json_lines}) {
            const std::string text = write_ballots(profile, format);
            BallotProfile reparsed = parse_ballots(text, format);
            CHECK(reparsed == profile);
            // Serialization is a fixed point: writing the reparsed profile
            // reproduces the same bytes.
            CHECK(write_ballots(reparsed, format) == text);
        }
    }
}

TEST_CASE("compact text writes the expected canonical form") {
    CHECK(write_ballots(two_blocs(), BallotFormat::compact_text) ==
          "candidates: A1 A2 B1 B2\n"
          "budget: 2\n"
          "500: A1 A2\n"
          "100: A1 B1\n"
          "10: A1 B2\n"
          "20: A2 B1\n"
          "20: A2 B2\n"
          "350: B1 B2\n");
    // Ternary ballots sign every opinion so approvals are unambiguous.
    const std::string ternary = write_ballots(two_blocs_ternary(), BallotFormat::compact_text);
    CHECK(ternary.find("mode: ternary\n") != std::string::npos);
    CHECK(ternary.find("500: +A1 -B1\n") != std::string::npos);
}

TEST_CASE("csv accepts an optional weight column and metadata comments") {
    const std::string with_weights =
        "# mode: binary\n"
        "weight,A,B,C\n"
        "3,1,0,1\n"
        "2,0,1,0\n";
    BallotProfile profile = parse_ballots(with_weights, BallotFormat::matrix_csv);
    CHECK(profile.voter_count() == 5);
    CHECK(profile.ballots()[0].weight() == 3);
    CHECK(profile.mode() == Mode::binary);
    CHECK_FALSE(profile.opinion_budget().has_value());

    const std::string unweighted = "A,B,C\n1,0,1\n1,0,1\n0,1,0\n";
    BallotProfile merged = parse_ballots(unweighted, BallotFormat::matrix_csv);
    CHECK(merged.voter_count() == 3);
    CHECK(merged.ballots()[0].weight() == 2);  // identical rows merge

    const std::string budgeted = "# budget: 2\nA,B,C\n1,1,0\n";
    CHECK(parse_ballots(budgeted, BallotFormat::matrix_csv).opinion_budget() == 2);
}

TEST_CASE("csv parse errors carry line numbers") {
    expect_parse_error("A,B\n1,0\n1,2\n", BallotFormat::matrix_csv, "line 3");
    expect_parse_error("A,B\n1\n", BallotFormat::matrix_csv, "line 2");
    expect_parse_error("A,B\nx,0\n", BallotFormat::matrix_csv, "integer");
    expect_parse_error("A,A\n1,0\n", BallotFormat::matrix_csv, "duplicate");
    expect_parse_error("", BallotFormat::matrix_csv, "header");
    try {
        (void)parse_ballots(std::string("weight,A,B\n0,1,0\n"), BallotFormat::matrix_csv);
        FAIL("expected an error for weight 0");
    } catch (const Error& error) {
        CHECK(error.code() == ErrorCode::negative_weight);
    }
}

TEST_CASE("compact text resolves rosters and rejects malformed lines") {
    // Without a roster line the roster is the candidates in order of first
    // appearance.
    BallotProfile inferred = parse_ballots(std::string("2: B A\n1: C\n"),
                                           BallotFormat::compact_text);
    CHECK(inferred.roster().names() == std::vector<std::string>{"B", "A", "C"});
    CHECK(inferred.mode() == Mode::binary);

    // A '-' token switches the inferred mode to ternary.
    BallotProfile ternary = parse_ballots(std::string("2: A -B\n"), BallotFormat::compact_text);
    CHECK(ternary.mode() == Mode::ternary);

    expect_parse_error("just words\n", BallotFormat::compact_text, "line 1");
    expect_parse_error("2: A\ncandidates: A B\n", BallotFormat::compact_text,
                       "roster line must precede");
    expect_parse_error("candidates: A B\ncandidates: A B\n", BallotFormat::compact_text,
                       "duplicate roster");
    expect_parse_error("candidates: A\n1: A A\n", BallotFormat::compact_text, "twice");
    expect_parse_error("candidates: A\n1: B\n", BallotFormat::compact_text,
                       "unknown candidate 'B'");
    expect_parse_error("x: A\n", BallotFormat::compact_text, "integer");
}

TEST_CASE("json lines validates keys strictly") {
    const std::string good =
        R"({"candidates": ["A", "B"], "mode": "binary"})"
        "\n"
        R"({"weight": 4, "opinions": {"A": 1}})"
        "\n"
        R"({"opinions": {"B": 1}})"
        "\n";
    BallotProfile profile = parse_ballots(good, BallotFormat::json_lines);
    CHECK(profile.voter_count() == 5);            // missing weight defaults to 1
    CHECK(profile.ballots()[1].weight() == 1);

    expect_parse_error("not json\n", BallotFormat::json_lines, "invalid JSON");
    expect_parse_error("[1,2]\n", BallotFormat::json_lines, "object");
    expect_parse_error(R"({"weight": 1, "opinions": {"A": 1}, "extra": 2})" "\n",
                       BallotFormat::json_lines, "unknown ballot key");
    expect_parse_error(R"({"opinions": {"A": 1}})" "\n" R"({"candidates": ["A"]})" "\n",
                       BallotFormat::json_lines, "first line");
    expect_parse_error(R"({"candidates": ["A"], "surprise": 1})" "\n",
                       BallotFormat::json_lines, "unknown roster key");
}

TEST_CASE("explicit parse options override file directives") {
    const std::string text = "candidates: A B C\nbudget: 2\n3: A B\n";

    ParseOptions keep;
    CHECK(parse_ballots(text, BallotFormat::compact_text, keep).opinion_budget() == 2);

    ParseOptions drop;
    drop.ignore_file_budget = true;
    CHECK_FALSE(parse_ballots(text, BallotFormat::compact_text, drop).opinion_budget().has_value());

    ParseOptions force;
    force.opinion_budget = 2;
    force.mode = Mode::ternary;
    BallotProfile forced = parse_ballots(text, BallotFormat::compact_text, force);
    CHECK(forced.mode() == Mode::ternary);
    CHECK(forced.opinion_budget() == 2);

    // Forcing binary onto ternary data is an error, never a silent coercion.
    ParseOptions binary_only;
    binary_only.mode = Mode::binary;
    try {
        (void)parse_ballots(std::string("1: A -B\n"), BallotFormat::compact_text, binary_only);
        FAIL("expected mode_violation");
    } catch (const Error& error) {
        CHECK(error.code() == ErrorCode::mode_violation);
    }
}

TEST_CASE("the shipped data files parse to the canonical profiles") {
    CHECK(parse_ballots_file(kDataDir + "/two_blocs.txt") == two_blocs());
    CHECK(parse_ballots_file(kDataDir + "/front_runner.txt") == front_runner());
    CHECK(parse_ballots_file(kDataDir + "/two_blocs_ternary.txt") == two_blocs_ternary());
    BallotProfile small = parse_ballots_file(kDataDir + "/small_committee.csv");
    CHECK(small.voter_count() == 4);
    CHECK(small.roster().names() == std::vector<std::string>{"A", "B", "C", "D", "E"});
}

TEST_CASE("file format is inferred from extension or content") {
    const std::string compact = write_ballots(two_blocs(), BallotFormat::compact_text);
    const std::string csv = write_ballots(two_blocs(), BallotFormat::matrix_csv);
    const std::string jsonl = write_ballots(two_blocs(), BallotFormat::json_lines);

    CHECK(parse_ballots_file(temp_file("a.txt", compact)) == two_blocs());
    CHECK(parse_ballots_file(temp_file("b.csv", csv)) == two_blocs());
    CHECK(parse_ballots_file(temp_file("c.jsonl", jsonl)) == two_blocs());
    CHECK(parse_ballots_file(temp_file("d.json", jsonl)) == two_blocs());

    // Unknown extension: sniff the first meaningful line.
    CHECK(parse_ballots_file(temp_file("e.dat", compact)) == two_blocs());
    CHECK(parse_ballots_file(temp_file("f.dat", csv)) == two_blocs());
    CHECK(parse_ballots_file(temp_file("g.dat", jsonl)) == two_blocs());

    // Explicit format beats the extension.
    CHECK(parse_ballots_file(temp_file("h.csv", compact), BallotFormat::compact_text) ==
          two_blocs());

    CHECK_THROWS_AS((void)parse_ballots_file("definitely_missing_file.txt"), Error);
}

TEST_CASE("result output shows winners, scores, and warnings per format") {
    BallotProfile profile = two_blocs();
    ElectionResult result = elect_exact(profile, 2, KeyVariant::finite_p, 2.0);

    const std::string table = write_result(result, profile, OutputFormat::table);
    CHECK(table.find("pnorm(p=2)") != std::string::npos);
    CHECK(table.find("{A1,B1}") != std::string::npos);
    CHECK(table.find("61.97") != std::string::npos);

    const std::string csv = write_result(result, profile, OutputFormat::csv);
    CHECK(csv.find("A1+B1") != std::string::npos);

    json node = json::parse(write_result(result, profile, OutputFormat::json));
    CHECK(node["method"] == "pnorm(p=2)");
    CHECK(node["rule"] == "pnorm");
    CHECK(node["p"] == 2.0);
    CHECK(node["winners"].size() == 1);
    CHECK(node["winners"][0] == json::array({"A1", "B1"}));
    CHECK(node["tie"] == false);
    CHECK(node["warnings"].empty());

    // Ties and coverage fields.
    ElectionResult cover = elect_max_cover(profile, 2);
    json cover_node = json::parse(write_result(cover, profile, OutputFormat::json));
    CHECK(cover_node["coverage"] == json::array({990}));
    CHECK(cover_node["voters"] == 1000);

    ElectionResult minimax = elect_exact(profile, 2, KeyVariant::minimax);
    const std::string minimax_table = write_result(minimax, profile, OutputFormat::table);
    CHECK(minimax_table.find("tie: yes (6 committees)") != std::string::npos);
    // The human-readable table keeps stdout clean (the CLI routes warnings to
    // stderr); the machine formats carry warnings inline instead.
    CHECK(minimax_table.find("coincidental tie") == std::string::npos);
    const std::string minimax_csv = write_result(minimax, profile, OutputFormat::csv);
    CHECK(minimax_csv.find("# warning: ") != std::string::npos);
    CHECK(minimax_csv.find("coincidental tie") != std::string::npos);
    json minimax_node = json::parse(write_result(minimax, profile, OutputFormat::json));
    bool has_coincidental = false;
    for (const auto& warning : minimax_node["warnings"]) {
        if (warning.get<std::string>().find("coincidental tie") != std::string::npos) {
            has_coincidental = true;
        }
    }
    CHECK(has_coincidental);
}

TEST_CASE("score tables serialize in every format") {
    BallotProfile profile = two_blocs();
    SolveOptions options;
    options.with_scores = true;
    ElectionResult result = elect_exact(profile, 2, KeyVariant::finite_p, 2.0, options);

    const std::string table = write_result(result, profile, OutputFormat::table);
    CHECK(table.find('*') != std::string::npos);  // winner rows are starred

    const std::string csv = write_result(result, profile, OutputFormat::csv);
    CHECK(csv.find("committee,score,winner") != std::string::npos);

    json node = json::parse(write_result(result, profile, OutputFormat::json));
    REQUIRE(node.contains("scores"));
    CHECK(node["scores"].size() == 6);
    int winner_rows = 0;
    for (const auto& row : node["scores"]) {
        if (row["winner"].get<bool>()) ++winner_rows;
    }
    CHECK(winner_rows == 1);
}

TEST_CASE("sweep output marks per-column minimizers") {
    BallotProfile profile = two_blocs();
    SweepMatrix matrix = sweep(profile, 2, {1.0, 2.0});

    const std::string table = write_sweep(matrix, profile, OutputFormat::table);
    CHECK(table.find("{A1,A2}") != std::string::npos);
    CHECK(table.find('*') != std::string::npos);

    const std::string csv = write_sweep(matrix, profile, OutputFormat::csv);
    CHECK(csv.find("committee,p=1,p=2") != std::string::npos);
    CHECK(csv.find("# minimizer") != std::string::npos);

    json node = json::parse(write_sweep(matrix, profile, OutputFormat::json));
    CHECK(node["ps"] == json::array({1.0, 2.0}));
    CHECK(node["committees"].size() == 6);
    CHECK(node["minimizers"].size() == 2);
}

TEST_CASE("comparison output calls out agreement and disagreement") {
    BallotProfile profile = two_blocs();
    std::vector<ElectionResult> results = {elect_minisum(profile, 2),
                                           elect_exact(profile, 2, KeyVariant::finite_p, 2.0)};

    const std::string table = write_comparison(results, profile, OutputFormat::table);
    CHECK(table.find("methods disagree") != std::string::npos);
    CHECK(table.find("coverage") != std::string::npos);

    json node = json::parse(write_comparison(results, profile, OutputFormat::json));
    CHECK(node["agree"] == false);
    REQUIRE(node["methods"].size() == 2);
    CHECK(node["methods"][0]["method"] == "minisum");

    std::vector<ElectionResult> same = {elect_minisum(profile, 2), elect_minisum(profile, 2)};
    const std::string agree_table = write_comparison(same, profile, OutputFormat::table);
    CHECK(agree_table.find("methods agree") != std::string::npos);
}

TEST_CASE("numeric formatting survives a string round-trip") {
    BallotProfile profile = two_blocs();
    ElectionResult result = elect_exact(profile, 2, KeyVariant::finite_p, 3.0);
    json node = json::parse(write_result(result, profile, OutputFormat::json));
    CHECK(node["score"].get<double>() == *result.best_score);

    // CSV scores use shortest round-trip formatting: parsing the field back
    // recovers the double bit-for-bit.
    const std::string csv = write_result(result, profile, OutputFormat::csv);
    std::istringstream lines(csv);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    const std::size_t first = row.find(',');
    const std::size_t second = row.find(',', first + 1);
    REQUIRE(first != std::string::npos);
    REQUIRE(second != std::string::npos);
    CHECK(std::stod(row.substr(first + 1, second - first - 1)) == *result.best_score);
}

TEST_CASE("committee formatting uses roster names") {
    BallotProfile profile = two_blocs();
    CHECK(format_committee(committee_of(profile, {"A1", "B2"}), profile.roster()) == "{A1,B2}");
}
