#include "pnelect/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string_view>

#include <json.hpp>

namespace pnelect {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    return text;
}

std::vector<std::string_view> split(std::string_view text, char separator) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t stop = text.find(separator, start);
        if (stop == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, stop - start));
        start = stop + 1;
    }
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) parts.push_back(text.substr(start, i - start));
    }
    return parts;
}

[[noreturn]] void parse_fail(int line_no, const std::string& message) {
    fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": " + message);
}

std::int64_t parse_integer(std::string_view text, int line_no, const char* what) {
    text = trim(text);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        parse_fail(line_no, std::string("expected an integer ") + what + ", got '" +
                                std::string(text) + "'");
    }
    return value;
}

// Lines of the input with their 1-based numbers, trailing CR stripped.
std::vector<std::pair<int, std::string>> read_lines(std::istream& source) {
    std::vector<std::pair<int, std::string>> lines;
    std::string line;
    int number = 0;
    while (std::getline(source, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.emplace_back(number, line);
    }
    return lines;
}

struct FileDirectives {
    std::optional<std::vector<std::string>> candidates;
    std::optional<Mode> mode;
    std::optional<int> budget;
};

Mode parse_mode_word(std::string_view word, int line_no) {
    if (word == "binary") return Mode::binary;
    if (word == "ternary") return Mode::ternary;
    parse_fail(line_no, "mode must be 'binary' or 'ternary', got '" + std::string(word) + "'");
}

// Tokens of one ballot line, unresolved against a roster yet.
struct PendingBallot {
    std::int64_t weight = 1;
    std::vector<std::pair<std::string, std::int8_t>> opinions;
    int line_no = 0;
};

CandidateRoster resolve_roster(const FileDirectives& directives,
                               const std::vector<PendingBallot>& pending) {
    if (directives.candidates) return CandidateRoster(*directives.candidates);
    // No roster given: first appearance across ballot tokens fixes the order.
    std::vector<std::string> names;
    std::map<std::string, bool> known;
    for (const PendingBallot& ballot : pending) {
        for (const auto& [name, value] : ballot.opinions) {
            if (known.emplace(name, true).second) names.push_back(name);
        }
    }
    if (names.empty()) {
        fail(ErrorCode::parse_error, "no candidates found: add a roster line or ballots");
    }
    return CandidateRoster(std::move(names));
}

BallotProfile assemble(const FileDirectives& directives, const std::vector<PendingBallot>& pending,
                       const ParseOptions& options) {
    const CandidateRoster roster = resolve_roster(directives, pending);
    std::vector<RawBallot> raws;
    raws.reserve(pending.size());
    bool any_rejection = false;
    for (const PendingBallot& ballot : pending) {
        std::vector<std::int8_t> opinions(static_cast<std::size_t>(roster.size()), 0);
        for (const auto& [name, value] : ballot.opinions) {
            const std::optional<int> index = roster.find(name);
            if (!index) {
                fail(ErrorCode::unknown_candidate,
                     "line " + std::to_string(ballot.line_no) + ": unknown candidate '" + name +
                         "'");
            }
            auto& slot = opinions[static_cast<std::size_t>(*index)];
            if (slot != 0) {
                parse_fail(ballot.line_no, "candidate '" + name + "' appears twice in one ballot");
            }
            slot = value;
            if (value == -1) any_rejection = true;
        }
        raws.emplace_back(std::move(opinions), ballot.weight);
    }
    // Explicit options beat file directives beat inference.
    const Mode mode = options.mode ? *options.mode
                                   : directives.mode ? *directives.mode
                                                     : (any_rejection ? Mode::ternary : Mode::binary);
    std::optional<int> budget = options.opinion_budget;
    if (!budget && !options.ignore_file_budget) budget = directives.budget;
    return build_profile(roster, raws, mode, budget);
}

// matrix_csv: optional '# mode:' / '# budget:' comments, a header row of
// candidate names (optionally preceded by a literal 'weight' column), then one
// row per ballot with cells in {-1, 0, 1}.
BallotProfile parse_matrix_csv(const std::vector<std::pair<int, std::string>>& lines,
                               const ParseOptions& options) {
    FileDirectives directives;
    std::vector<PendingBallot> pending;
    bool saw_header = false;
    bool weighted = false;
    std::vector<std::string> names;

    for (const auto& [line_no, raw] : lines) {
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string_view body = trim(line.substr(1));
            if (body.rfind("mode:", 0) == 0) {
                directives.mode = parse_mode_word(trim(body.substr(5)), line_no);
            } else if (body.rfind("budget:", 0) == 0) {
                directives.budget =
                    static_cast<int>(parse_integer(body.substr(7), line_no, "budget"));
            }
            continue;
        }
        const std::vector<std::string_view> cells = split(line, ',');
        if (!saw_header) {
            saw_header = true;
            std::size_t first = 0;
            if (!cells.empty() && trim(cells[0]) == "weight") {
                weighted = true;
                first = 1;
            }
            for (std::size_t i = first; i < cells.size(); ++i) {
                names.emplace_back(trim(cells[i]));
            }
            if (names.empty()) parse_fail(line_no, "header row has no candidate names");
            directives.candidates = names;
            continue;
        }
        const std::size_t expected = names.size() + (weighted ? 1 : 0);
        if (cells.size() != expected) {
            parse_fail(line_no, "expected " + std::to_string(expected) + " cells, got " +
                                    std::to_string(cells.size()));
        }
        PendingBallot ballot;
        ballot.line_no = line_no;
        std::size_t first = 0;
        if (weighted) {
            ballot.weight = parse_integer(cells[0], line_no, "weight");
            first = 1;
        }
        for (std::size_t i = first; i < cells.size(); ++i) {
            const std::int64_t value = parse_integer(cells[i], line_no, "opinion");
            if (value < -1 || value > 1) {
                parse_fail(line_no, "opinion cells must be -1, 0, or 1");
            }
            if (value != 0) {
                ballot.opinions.emplace_back(names[i - first],
                                             static_cast<std::int8_t>(value));
            }
        }
        pending.push_back(std::move(ballot));
    }
    if (!saw_header) fail(ErrorCode::parse_error, "no header row found");
    return assemble(directives, pending, options);
}

// compact_text: '#' comments; optional 'candidates:' / 'mode:' / 'budget:'
// directive lines; ballot lines '<weight>: <token> ...' where a token is
// Name, +Name, or -Name.
BallotProfile parse_compact_text(const std::vector<std::pair<int, std::string>>& lines,
                                 const ParseOptions& options) {
    FileDirectives directives;
    std::vector<PendingBallot> pending;

    for (const auto& [line_no, raw] : lines) {
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) {
            parse_fail(line_no, "expected '<weight>: ...' or a directive line");
        }
        const std::string_view head = trim(line.substr(0, colon));
        const std::string_view rest = line.substr(colon + 1);
        if (head == "candidates") {
            if (!pending.empty()) parse_fail(line_no, "roster line must precede ballots");
            if (directives.candidates) parse_fail(line_no, "duplicate roster line");
            std::vector<std::string> names;
            for (std::string_view token : split_whitespace(rest)) names.emplace_back(token);
            if (names.empty()) parse_fail(line_no, "roster line has no names");
            directives.candidates = std::move(names);
            continue;
        }
        if (head == "mode") {
            directives.mode = parse_mode_word(trim(rest), line_no);
            continue;
        }
        if (head == "budget") {
            directives.budget = static_cast<int>(parse_integer(rest, line_no, "budget"));
            continue;
        }
        PendingBallot ballot;
        ballot.line_no = line_no;
        ballot.weight = parse_integer(head, line_no, "weight");
        for (std::string_view token : split_whitespace(rest)) {
            std::int8_t value = 1;
            if (token.front() == '+') {
                token.remove_prefix(1);
            } else if (token.front() == '-') {
                value = -1;
                token.remove_prefix(1);
            }
            if (token.empty()) parse_fail(line_no, "empty candidate name in token");
            ballot.opinions.emplace_back(std::string(token), value);
        }
        pending.push_back(std::move(ballot));
    }
    return assemble(directives, pending, options);
}

// json_lines: one JSON object per line. An optional first object
// {"candidates": [...], "mode": ..., "budget": ...} fixes the roster; every
// other line is {"weight": w, "opinions": {"Name": -1|0|1, ...}}.
BallotProfile parse_json_lines(const std::vector<std::pair<int, std::string>>& lines,
                               const ParseOptions& options) {
    FileDirectives directives;
    std::vector<PendingBallot> pending;

    for (const auto& [line_no, raw] : lines) {
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        ordered_json node;
        try {
            node = ordered_json::parse(line);
        } catch (const std::exception& error) {
            parse_fail(line_no, std::string("invalid JSON: ") + error.what());
        }
        if (!node.is_object()) parse_fail(line_no, "expected a JSON object");
        if (node.contains("candidates")) {
            if (!pending.empty() || directives.candidates) {
                parse_fail(line_no, "roster object must be the single first line");
            }
            for (const auto& [key, value] : node.items()) {
                if (key != "candidates" && key != "mode" && key != "budget") {
                    parse_fail(line_no, "unknown roster key '" + key + "'");
                }
            }
            if (!node["candidates"].is_array()) {
                parse_fail(line_no, "'candidates' must be an array of names");
            }
            std::vector<std::string> names;
            for (const auto& entry : node["candidates"]) {
                if (!entry.is_string()) parse_fail(line_no, "candidate names must be strings");
                names.push_back(entry.get<std::string>());
            }
            directives.candidates = std::move(names);
            if (node.contains("mode")) {
                if (!node["mode"].is_string()) parse_fail(line_no, "'mode' must be a string");
                directives.mode = parse_mode_word(node["mode"].get<std::string>(), line_no);
            }
            if (node.contains("budget")) {
                if (!node["budget"].is_number_integer()) {
                    parse_fail(line_no, "'budget' must be an integer");
                }
                directives.budget = node["budget"].get<int>();
            }
            continue;
        }
        for (const auto& [key, value] : node.items()) {
            if (key != "weight" && key != "opinions") {
                parse_fail(line_no, "unknown ballot key '" + key + "'");
            }
        }
        PendingBallot ballot;
        ballot.line_no = line_no;
        if (node.contains("weight")) {
            if (!node["weight"].is_number_integer()) {
                parse_fail(line_no, "'weight' must be an integer");
            }
            ballot.weight = node["weight"].get<std::int64_t>();
        }
        if (!node.contains("opinions") || !node["opinions"].is_object()) {
            parse_fail(line_no, "ballot needs an 'opinions' object");
        }
        for (const auto& [name, value] : node["opinions"].items()) {
            if (!value.is_number_integer()) {
                parse_fail(line_no, "opinion values must be -1, 0, or 1");
            }
            const std::int64_t opinion = value.get<std::int64_t>();
            if (opinion < -1 || opinion > 1) {
                parse_fail(line_no, "opinion values must be -1, 0, or 1");
            }
            if (opinion != 0) {
                ballot.opinions.emplace_back(name, static_cast<std::int8_t>(opinion));
            }
        }
        pending.push_back(std::move(ballot));
    }
    return assemble(directives, pending, options);
}

std::string format_double(double value) {
    std::array<char, 64> buffer;
    const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ptr);
}

std::string format_fixed2(double value) {
    std::array<char, 64> buffer;
    const int written = std::snprintf(buffer.data(), buffer.size(), "%.2f", value);
    return std::string(buffer.data(), static_cast<std::size_t>(written));
}

// Committee as a single CSV-safe cell.
std::string csv_committee(const Committee& committee, const CandidateRoster& roster) {
    std::string out;
    for (int member : committee.members()) {
        if (!out.empty()) out += '+';
        out += roster.name(member);
    }
    return out;
}

ordered_json committee_names(const Committee& committee, const CandidateRoster& roster) {
    ordered_json names = ordered_json::array();
    for (int member : committee.members()) names.push_back(roster.name(member));
    return names;
}

std::string rule_token(Rule rule) {
    switch (rule) {
        case Rule::pnorm: return "pnorm";
        case Rule::minisum: return "minisum";
        case Rule::minimax: return "minimax";
        case Rule::max_cover: return "maxcover";
        case Rule::greedy: return "greedy";
        case Rule::p_zero: return "p0";
    }
    return "unknown";
}

std::string histogram_pairs(const DistanceHistogram& hist) {
    std::string out;
    for (const auto& [d, count] : hist.counts()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(d) + ":" + std::to_string(count);
    }
    return out.empty() ? "(empty)" : out;
}

ordered_json result_to_json(const ElectionResult& result, const BallotProfile& profile) {
    ordered_json node;
    node["method"] = result.method.name();
    node["rule"] = rule_token(result.method.rule);
    if (result.method.rule == Rule::pnorm) node["p"] = result.method.p;
    ordered_json winners = ordered_json::array();
    for (const Committee& committee : result.winners) {
        winners.push_back(committee_names(committee, profile.roster()));
    }
    node["winners"] = std::move(winners);
    node["tie"] = result.tie_flag;
    if (result.best_score) node["score"] = *result.best_score;
    if (!result.coverages.empty()) {
        node["coverage"] = result.coverages;
        node["voters"] = profile.voter_count();
    }
    if (result.scores) {
        ordered_json rows = ordered_json::array();
        for (const ScoreRow& row : *result.scores) {
            ordered_json entry;
            entry["committee"] = committee_names(row.committee, profile.roster());
            entry["score"] = row.score;
            entry["winner"] = row.winner;
            rows.push_back(std::move(entry));
        }
        node["scores"] = std::move(rows);
    }
    node["warnings"] = result.warnings;
    return node;
}

std::string result_table(const ElectionResult& result, const BallotProfile& profile) {
    std::ostringstream out;
    out << "method: " << result.method.name() << '\n';
    out << "winners:";
    for (const Committee& committee : result.winners) {
        out << ' ' << format_committee(committee, profile.roster());
    }
    out << '\n';
    if (result.tie_flag) {
        out << "tie: yes (" << result.winners.size() << " committees)\n";
    }
    if (result.best_score) out << "score: " << format_fixed2(*result.best_score) << '\n';
    if (!result.coverages.empty()) {
        out << "coverage: " << result.coverages.front() << '/' << profile.voter_count() << '\n';
    }
    if (result.scores) {
        std::size_t width = 0;
        for (const ScoreRow& row : *result.scores) {
            width = std::max(width, format_committee(row.committee, profile.roster()).size());
        }
        out << "scores:\n";
        for (const ScoreRow& row : *result.scores) {
            const std::string label = format_committee(row.committee, profile.roster());
            out << "  " << label << std::string(width - label.size() + 2, ' ')
                << format_fixed2(row.score) << (row.winner ? "  *" : "") << '\n';
        }
    }
    return out.str();
}

std::string result_csv(const ElectionResult& result, const BallotProfile& profile) {
    std::ostringstream out;
    if (result.scores) {
        out << "committee,score,winner\n";
        for (const ScoreRow& row : *result.scores) {
            out << csv_committee(row.committee, profile.roster()) << ','
                << format_double(row.score) << ',' << (row.winner ? "true" : "false") << '\n';
        }
    } else {
        const bool with_coverage = !result.coverages.empty();
        out << "committee,score,winner" << (with_coverage ? ",coverage" : "") << '\n';
        for (std::size_t i = 0; i < result.winners.size(); ++i) {
            out << csv_committee(result.winners[i], profile.roster()) << ','
                << (result.best_score ? format_double(*result.best_score) : "") << ",true";
            if (with_coverage) out << ',' << result.coverages[i];
            out << '\n';
        }
    }
    for (const std::string& warning : result.warnings) {
        out << "# warning: " << warning << '\n';
    }
    return out.str();
}

std::string sweep_table(const SweepMatrix& matrix, const BallotProfile& profile) {
    const std::size_t rows = matrix.committees.size();
    const std::size_t cols = matrix.ps.size();
    std::vector<std::vector<char>> minimal(rows, std::vector<char>(cols, 0));
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t row : matrix.minimizers[c]) minimal[row][c] = 1;
    }

    std::vector<std::string> labels;
    labels.reserve(rows);
    std::size_t label_width = std::string("committee").size();
    for (const Committee& committee : matrix.committees) {
        labels.push_back(format_committee(committee, profile.roster()));
        label_width = std::max(label_width, labels.back().size());
    }
    std::vector<std::string> headers(cols);
    std::vector<std::size_t> widths(cols);
    std::vector<std::vector<std::string>> cells(rows, std::vector<std::string>(cols));
    for (std::size_t c = 0; c < cols; ++c) {
        std::ostringstream header;
        header << "p=" << matrix.ps[c];
        headers[c] = header.str();
        widths[c] = headers[c].size();
        for (std::size_t r = 0; r < rows; ++r) {
            cells[r][c] = format_fixed2(matrix.values[r][c]);
            if (minimal[r][c]) cells[r][c] += '*';
            widths[c] = std::max(widths[c], cells[r][c].size());
        }
    }

    std::ostringstream out;
    out << "committee" << std::string(label_width - 9 + 2, ' ');
    for (std::size_t c = 0; c < cols; ++c) {
        out << std::string(widths[c] - headers[c].size(), ' ') << headers[c]
            << (c + 1 < cols ? "  " : "");
    }
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        out << labels[r] << std::string(label_width - labels[r].size() + 2, ' ');
        for (std::size_t c = 0; c < cols; ++c) {
            out << std::string(widths[c] - cells[r][c].size(), ' ') << cells[r][c]
                << (c + 1 < cols ? "  " : "");
        }
        out << '\n';
    }
    return out.str();
}

std::string sweep_csv(const SweepMatrix& matrix, const BallotProfile& profile) {
    std::ostringstream out;
    out << "committee";
    for (double p : matrix.ps) out << ",p=" << p;
    out << '\n';
    for (std::size_t r = 0; r < matrix.committees.size(); ++r) {
        out << csv_committee(matrix.committees[r], profile.roster());
        for (std::size_t c = 0; c < matrix.ps.size(); ++c) {
            out << ',' << format_double(matrix.values[r][c]);
        }
        out << '\n';
    }
    for (std::size_t c = 0; c < matrix.ps.size(); ++c) {
        out << "# minimizers p=" << matrix.ps[c] << ':';
        for (std::size_t row : matrix.minimizers[c]) {
            out << ' ' << csv_committee(matrix.committees[row], profile.roster());
        }
        out << '\n';
    }
    for (const std::string& warning : matrix.warnings) {
        out << "# warning: " << warning << '\n';
    }
    return out.str();
}

ordered_json sweep_to_json(const SweepMatrix& matrix, const BallotProfile& profile) {
    ordered_json node;
    node["report"] = matrix.report == SweepReport::norm ? "norm" : "power_sum";
    node["ps"] = matrix.ps;
    ordered_json committees = ordered_json::array();
    for (const Committee& committee : matrix.committees) {
        committees.push_back(committee_names(committee, profile.roster()));
    }
    node["committees"] = std::move(committees);
    node["values"] = matrix.values;
    node["minimizers"] = matrix.minimizers;
    node["warnings"] = matrix.warnings;
    return node;
}

}  // namespace

BallotProfile parse_ballots(std::istream& source, BallotFormat format,
                            const ParseOptions& options) {
    const auto lines = read_lines(source);
    switch (format) {
        case BallotFormat::matrix_csv: return parse_matrix_csv(lines, options);
        case BallotFormat::compact_text: return parse_compact_text(lines, options);
        case BallotFormat::json_lines: return parse_json_lines(lines, options);
    }
    fail(ErrorCode::parse_error, "unknown ballot format");
}

BallotProfile parse_ballots(const std::string& text, BallotFormat format,
                            const ParseOptions& options) {
    std::istringstream source(text);
    return parse_ballots(source, format, options);
}

BallotProfile parse_ballots_file(const std::string& path, std::optional<BallotFormat> format,
                                 const ParseOptions& options) {
    std::ifstream file(path);
    if (!file) fail(ErrorCode::parse_error, "cannot open file: " + path);

    if (!format) {
        std::string lowered = path;
        std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (lowered.ends_with(".csv")) {
            format = BallotFormat::matrix_csv;
        } else if (lowered.ends_with(".txt")) {
            format = BallotFormat::compact_text;
        } else if (lowered.ends_with(".jsonl") || lowered.ends_with(".ndjson") ||
                   lowered.ends_with(".json")) {
            format = BallotFormat::json_lines;
        }
    }
    if (format) return parse_ballots(file, *format, options);

    // Sniff: JSON objects start with '{'; compact lines carry ':'; CSV
    // carries ',' without ':'.
    std::stringstream buffered;
    buffered << file.rdbuf();
    const std::string text = buffered.str();
    BallotFormat guessed = BallotFormat::compact_text;
    std::istringstream scan(text);
    std::string line;
    while (std::getline(scan, line)) {
        const std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        if (stripped.front() == '{') {
            guessed = BallotFormat::json_lines;
        } else if (stripped.find(':') != std::string_view::npos) {
            guessed = BallotFormat::compact_text;
        } else if (stripped.find(',') != std::string_view::npos) {
            guessed = BallotFormat::matrix_csv;
        }
        break;
    }
    return parse_ballots(text, guessed, options);
}

std::string write_ballots(const BallotProfile& profile, BallotFormat format) {
    const CandidateRoster& roster = profile.roster();
    std::ostringstream out;
    switch (format) {
        case BallotFormat::matrix_csv: {
            if (profile.mode() == Mode::ternary) out << "# mode: ternary\n";
            if (profile.opinion_budget()) out << "# budget: " << *profile.opinion_budget() << '\n';
            out << "weight";
            for (const std::string& name : roster.names()) out << ',' << name;
            out << '\n';
            for (const Ballot& ballot : profile.ballots()) {
                out << ballot.weight();
                for (std::int8_t opinion : ballot.opinions()) {
                    out << ',' << static_cast<int>(opinion);
                }
                out << '\n';
            }
            return out.str();
        }
        case BallotFormat::compact_text: {
            out << "candidates:";
            for (const std::string& name : roster.names()) out << ' ' << name;
            out << '\n';
            if (profile.mode() == Mode::ternary) out << "mode: ternary\n";
            if (profile.opinion_budget()) out << "budget: " << *profile.opinion_budget() << '\n';
            const bool signs = profile.mode() == Mode::ternary;
            for (const Ballot& ballot : profile.ballots()) {
                out << ballot.weight() << ':';
                for (int i = 0; i < ballot.length(); ++i) {
                    const std::int8_t opinion = ballot.opinions()[static_cast<std::size_t>(i)];
                    if (opinion == 0) continue;
                    out << ' ';
                    if (opinion == -1) {
                        out << '-';
                    } else if (signs) {
                        out << '+';
                    }
                    out << roster.name(i);
                }
                out << '\n';
            }
            return out.str();
        }
        case BallotFormat::json_lines: {
            ordered_json header;
            header["candidates"] = roster.names();
            if (profile.mode() == Mode::ternary) header["mode"] = "ternary";
            if (profile.opinion_budget()) header["budget"] = *profile.opinion_budget();
            out << header.dump() << '\n';
            for (const Ballot& ballot : profile.ballots()) {
                ordered_json node;
                node["weight"] = ballot.weight();
                ordered_json opinions = ordered_json::object();
                for (int i = 0; i < ballot.length(); ++i) {
                    const std::int8_t opinion = ballot.opinions()[static_cast<std::size_t>(i)];
                    if (opinion != 0) opinions[roster.name(i)] = static_cast<int>(opinion);
                }
                node["opinions"] = std::move(opinions);
                out << node.dump() << '\n';
            }
            return out.str();
        }
    }
    fail(ErrorCode::parse_error, "unknown ballot format");
}

std::string format_committee(const Committee& committee, const CandidateRoster& roster) {
    std::string out = "{";
    for (int member : committee.members()) {
        if (out.size() > 1) out += ',';
        out += roster.name(member);
    }
    out += '}';
    return out;
}

std::string write_result(const ElectionResult& result, const BallotProfile& profile,
                         OutputFormat format) {
    switch (format) {
        case OutputFormat::table: return result_table(result, profile);
        case OutputFormat::csv: return result_csv(result, profile);
        case OutputFormat::json: return result_to_json(result, profile).dump(2) + "\n";
    }
    fail(ErrorCode::parse_error, "unknown output format");
}

std::string write_sweep(const SweepMatrix& matrix, const BallotProfile& profile,
                        OutputFormat format) {
    switch (format) {
        case OutputFormat::table: return sweep_table(matrix, profile);
        case OutputFormat::csv: return sweep_csv(matrix, profile);
        case OutputFormat::json: return sweep_to_json(matrix, profile).dump(2) + "\n";
    }
    fail(ErrorCode::parse_error, "unknown output format");
}

std::string write_comparison(const std::vector<ElectionResult>& results,
                             const BallotProfile& profile, OutputFormat format) {
    const bool agree = [&] {
        for (std::size_t i = 1; i < results.size(); ++i) {
            if (!(results[i].winners == results.front().winners)) return false;
        }
        return true;
    }();

    switch (format) {
        case OutputFormat::table: {
            std::ostringstream out;
            for (const ElectionResult& result : results) {
                out << "== " << result.method.name() << " ==\n";
                out << "winners:";
                for (const Committee& committee : result.winners) {
                    out << ' ' << format_committee(committee, profile.roster());
                }
                out << '\n';
                if (result.best_score) {
                    out << "score: " << format_fixed2(*result.best_score) << '\n';
                }
                for (const Committee& committee : result.winners) {
                    out << "  " << format_committee(committee, profile.roster()) << ": coverage "
                        << covered_count(profile, committee) << '/' << profile.voter_count()
                        << ", distances "
                        << histogram_pairs(distance_histogram(profile, committee)) << '\n';
                }
                out << '\n';
            }
            if (results.size() > 1) {
                if (agree) {
                    out << "methods agree on the winner set\n";
                } else {
                    out << "methods disagree:\n";
                    for (const ElectionResult& result : results) {
                        out << "  " << result.method.name() << ":";
                        for (const Committee& committee : result.winners) {
                            out << ' ' << format_committee(committee, profile.roster());
                        }
                        out << '\n';
                    }
                }
            }
            return out.str();
        }
        case OutputFormat::csv: {
            std::ostringstream out;
            out << "method,winners,score,coverage\n";
            for (const ElectionResult& result : results) {
                out << result.method.name() << ',';
                std::string cell;
                for (const Committee& committee : result.winners) {
                    if (!cell.empty()) cell += ' ';
                    cell += csv_committee(committee, profile.roster());
                }
                out << cell << ','
                    << (result.best_score ? format_double(*result.best_score) : "") << ','
                    << covered_count(profile, result.winners.front()) << '\n';
            }
            return out.str();
        }
        case OutputFormat::json: {
            ordered_json node;
            ordered_json methods = ordered_json::array();
            for (const ElectionResult& result : results) {
                ordered_json entry = result_to_json(result, profile);
                ordered_json coverage = ordered_json::array();
                ordered_json distances = ordered_json::array();
                for (const Committee& committee : result.winners) {
                    coverage.push_back(covered_count(profile, committee));
                    ordered_json histogram = ordered_json::object();
                    const DistanceHistogram counts = distance_histogram(profile, committee);
                    for (const auto& [d, count] : counts.counts()) {
                        histogram[std::to_string(d)] = count;
                    }
                    distances.push_back(std::move(histogram));
                }
                entry["winner_coverage"] = std::move(coverage);
                entry["winner_distances"] = std::move(distances);
                methods.push_back(std::move(entry));
            }
            node["methods"] = std::move(methods);
            node["agree"] = agree;
            return node.dump(2) + "\n";
        }
    }
    fail(ErrorCode::parse_error, "unknown output format");
}

}  // namespace pnelect
