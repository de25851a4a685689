#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "pnelect/io.hpp"
#include "pnelect/solvers.hpp"

namespace pnelect::cli {

namespace {

constexpr const char* kEnumBoundEnv = "PNELECT_ENUM_BOUND";

struct MethodSpec {
    Rule rule = Rule::pnorm;
    double p = 0.0;
};

// 'pnorm@2' picks the norm parameter inline; plain names for everything else.
MethodSpec parse_method_token(const std::string& token) {
    const std::size_t at = token.find('@');
    const std::string name = token.substr(0, at);
    std::optional<double> p;
    if (at != std::string::npos) {
        const std::string digits = token.substr(at + 1);
        char* end = nullptr;
        const double value = std::strtod(digits.c_str(), &end);
        if (digits.empty() || end != digits.c_str() + digits.size()) {
            fail(ErrorCode::parse_error, "cannot read p in method token '" + token + "'");
        }
        p = value;
    }
    if (name == "pnorm") {
        if (!p) {
            fail(ErrorCode::parse_error, "method 'pnorm' needs a parameter, e.g. pnorm@2");
        }
        return MethodSpec{Rule::pnorm, *p};
    }
    if (p) {
        fail(ErrorCode::parse_error, "method '" + name + "' does not take a parameter");
    }
    if (name == "minisum") return MethodSpec{Rule::minisum, 0.0};
    if (name == "minimax") return MethodSpec{Rule::minimax, 0.0};
    if (name == "maxcover") return MethodSpec{Rule::max_cover, 0.0};
    if (name == "greedy") return MethodSpec{Rule::greedy, 0.0};
    if (name == "p0") return MethodSpec{Rule::p_zero, 0.0};
    fail(ErrorCode::parse_error, "unknown method '" + name + "'");
}

ElectionResult run_method(const BallotProfile& profile, int k, const MethodSpec& spec,
                          const SolveOptions& options) {
    switch (spec.rule) {
        case Rule::pnorm:
            return elect_exact(profile, k, KeyVariant::finite_p, spec.p, options);
        case Rule::minisum: return elect_minisum(profile, k, options);
        case Rule::minimax:
            return elect_exact(profile, k, KeyVariant::minimax, 0.0, options);
        case Rule::max_cover: return elect_max_cover(profile, k, options);
        case Rule::greedy: return elect_greedy_cover(profile, k);
        case Rule::p_zero:
            return elect_exact(profile, k, KeyVariant::p_zero_limit, 0.0, options);
    }
    fail(ErrorCode::parse_error, "unknown method");
}

OutputFormat output_format_from(const std::string& name) {
    if (name == "table") return OutputFormat::table;
    if (name == "csv") return OutputFormat::csv;
    return OutputFormat::json;
}

std::optional<BallotFormat> ballot_format_from(const std::string& name) {
    if (name == "csv") return BallotFormat::matrix_csv;
    if (name == "compact") return BallotFormat::compact_text;
    if (name == "jsonl") return BallotFormat::json_lines;
    return std::nullopt;
}

std::uint64_t enumeration_bound_from_env() {
    const char* raw = std::getenv(kEnumBoundEnv);
    if (raw == nullptr || *raw == '\0') return kDefaultEnumerationBound;
    std::uint64_t value = 0;
    const char* end = raw;
    while (*end != '\0') ++end;
    const auto [ptr, ec] = std::from_chars(raw, end, value);
    if (ec != std::errc() || ptr != end || value == 0) {
        fail(ErrorCode::parse_error,
             std::string(kEnumBoundEnv) + " must be a positive integer, got '" + raw + "'");
    }
    return value;
}

// Flags shared by every subcommand.
struct CommonFlags {
    std::string ballots_path;
    int k = 0;
    std::string mode;
    std::string budget;
    std::string output_format = "table";
    std::string ballot_format;
    std::uint64_t enum_bound = kDefaultEnumerationBound;
    int threads = 0;
    bool seed_order = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--ballots", flags.ballots_path, "Ballot file (.csv, .txt, or .jsonl)")
        ->required();
    cmd->add_option("--k", flags.k, "Committee size")->required();
    cmd->add_option("--mode", flags.mode, "Override the ballot mode")
        ->check(CLI::IsMember({"binary", "ternary"}));
    cmd->add_option("--budget", flags.budget,
                    "Require this many opinions per ballot, or 'none' to drop a budget "
                    "declared in the file");
    cmd->add_option("--format", flags.output_format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->default_val("table");
    cmd->add_option("--ballot-format", flags.ballot_format,
                    "Force the input format instead of inferring it")
        ->check(CLI::IsMember({"csv", "compact", "jsonl"}));
    cmd->add_option("--enum-bound", flags.enum_bound,
                    "Refuse exact enumeration beyond this many committees (also settable "
                    "via PNELECT_ENUM_BOUND)");
    cmd->add_option("--threads", flags.threads,
                    "Worker threads for enumeration; 0 picks automatically. The result "
                    "never depends on this");
    cmd->add_flag("--seed-order", flags.seed_order,
                  "Tied winners are always listed in canonical order (sorted roster "
                  "indices); this flag just documents that request");
}

ParseOptions parse_options_from(const CommonFlags& flags) {
    ParseOptions options;
    if (flags.mode == "binary") options.mode = Mode::binary;
    if (flags.mode == "ternary") options.mode = Mode::ternary;
    if (!flags.budget.empty()) {
        if (flags.budget == "none") {
            options.ignore_file_budget = true;
        } else {
            int value = 0;
            const auto [ptr, ec] = std::from_chars(
                flags.budget.data(), flags.budget.data() + flags.budget.size(), value);
            if (ec != std::errc() || ptr != flags.budget.data() + flags.budget.size()) {
                fail(ErrorCode::parse_error,
                     "--budget takes an integer or 'none', got '" + flags.budget + "'");
            }
            options.opinion_budget = value;
        }
    }
    return options;
}

SolveOptions solve_options_from(const CommonFlags& flags, bool with_scores) {
    SolveOptions options;
    options.enumeration_bound = flags.enum_bound;
    options.threads = flags.threads;
    options.with_scores = with_scores;
    return options;
}

BallotProfile load_profile(const CommonFlags& flags) {
    return parse_ballots_file(flags.ballots_path, ballot_format_from(flags.ballot_format),
                              parse_options_from(flags));
}

void print_warnings(const std::vector<std::string>& warnings, const std::string& label,
                    std::ostream& err) {
    for (const std::string& warning : warnings) {
        err << "warning" << (label.empty() ? "" : " [" + label + "]") << ": " << warning << '\n';
    }
}

int run_tally(const CommonFlags& flags, const std::string& method, double p, bool p_given,
              bool with_scores, std::ostream& out, std::ostream& err) {
    MethodSpec spec;
    if (method == "pnorm") {
        if (!p_given) fail(ErrorCode::parse_error, "--method pnorm needs --p");
        spec = MethodSpec{Rule::pnorm, p};
    } else {
        if (p_given) fail(ErrorCode::parse_error, "--p is only meaningful with --method pnorm");
        spec = parse_method_token(method);
    }
    if (with_scores && spec.rule == Rule::greedy) {
        fail(ErrorCode::parse_error, "--scores is not available with --method greedy");
    }
    const BallotProfile profile = load_profile(flags);
    const ElectionResult result =
        run_method(profile, flags.k, spec, solve_options_from(flags, with_scores));
    out << write_result(result, profile, output_format_from(flags.output_format));
    print_warnings(result.warnings, "", err);
    return 0;
}

int run_sweep(const CommonFlags& flags, const std::vector<double>& ps, bool power_sum,
              std::ostream& out, std::ostream& err) {
    const BallotProfile profile = load_profile(flags);
    const SweepMatrix matrix =
        sweep(profile, flags.k, ps, power_sum ? SweepReport::power_sum : SweepReport::norm,
              solve_options_from(flags, false));
    out << write_sweep(matrix, profile, output_format_from(flags.output_format));
    print_warnings(matrix.warnings, "", err);
    return 0;
}

int run_compare(const CommonFlags& flags, const std::vector<std::string>& methods,
                std::ostream& out, std::ostream& err) {
    const BallotProfile profile = load_profile(flags);
    const SolveOptions options = solve_options_from(flags, false);
    std::vector<ElectionResult> results;
    results.reserve(methods.size());
    for (const std::string& token : methods) {
        results.push_back(run_method(profile, flags.k, parse_method_token(token), options));
    }
    out << write_comparison(results, profile, output_format_from(flags.output_format));
    for (const ElectionResult& result : results) {
        print_warnings(result.warnings, result.method.name(), err);
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"committee elections that minimize the p-norm of ballot distances", "pnelect"};
    app.require_subcommand(1);

    CommonFlags tally_flags;
    std::string method;
    double p = 0.0;
    bool with_scores = false;
    CLI::App* tally = app.add_subcommand("tally", "Elect a committee with one method");
    add_common_flags(tally, tally_flags);
    tally->add_option("--method", method, "Election method")
        ->required()
        ->check(CLI::IsMember({"pnorm", "minisum", "minimax", "maxcover", "greedy", "p0"}));
    CLI::Option* p_option = tally->add_option("--p", p, "Norm parameter (with --method pnorm)");
    tally->add_flag("--scores", with_scores, "Also list every committee's score");

    CommonFlags sweep_flags;
    std::vector<double> ps;
    bool power_sum = false;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Score every committee across several p values");
    add_common_flags(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--ps", ps, "Comma-separated p values")->required()->delimiter(',');
    sweep_cmd->add_flag("--power-sum", power_sum,
                        "Report power sums instead of norms (the readable convention for "
                        "p < 1)");

    CommonFlags compare_flags;
    std::vector<std::string> methods;
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "Run several methods side by side");
    add_common_flags(compare_cmd, compare_flags);
    compare_cmd
        ->add_option("--methods", methods,
                     "Comma-separated methods; pnorm takes its parameter inline, e.g. "
                     "minisum,pnorm@2,maxcover")
        ->required()
        ->delimiter(',');

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("pnelect");
        for (const std::string& arg : args) argv.push_back(arg.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& parse_error) {
        const int code = app.exit(parse_error, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* active = tally->parsed() ? tally : sweep_cmd->parsed() ? sweep_cmd : compare_cmd;
        CommonFlags* flags = tally->parsed() ? &tally_flags
                             : sweep_cmd->parsed() ? &sweep_flags
                                                   : &compare_flags;
        if (active->count("--enum-bound") == 0) {
            flags->enum_bound = enumeration_bound_from_env();
        }
        if (tally->parsed()) {
            return run_tally(tally_flags, method, p, p_option->count() > 0, with_scores, out,
                             err);
        }
        if (sweep_cmd->parsed()) return run_sweep(sweep_flags, ps, power_sum, out, err);
        return run_compare(compare_flags, methods, out, err);
    } catch (const Error& error) {
        err << "error: " << error.what() << '\n';
        if (error.code() == ErrorCode::too_large) {
            err << "hint: --method greedy runs without enumeration; --enum-bound or "
                << kEnumBoundEnv << " raises the limit\n";
            return 3;
        }
        return 2;
    } catch (const std::exception& error) {
        err << "error: " << error.what() << '\n';
        return 2;
    }
}

}  // namespace pnelect::cli
