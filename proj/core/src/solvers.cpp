#include "pnelect/solvers.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>

#include "pnelect/combinations.hpp"

namespace pnelect {

namespace {

// Materialized tables (score listings, sweep matrices) stay below this many
// rows; plain winner searches are limited only by SolveOptions.
constexpr std::uint64_t kMaxTableRows = 100'000;

void check_committee_size(const BallotProfile& profile, int k) {
    const int n = profile.candidate_count();
    if (k < 1 || k > n) {
        fail(ErrorCode::invalid_k,
             "need 1 <= k <= n, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
    }
}

std::uint64_t checked_total(const BallotProfile& profile, int k, std::uint64_t bound) {
    const std::uint64_t total = committee_count(profile.candidate_count(), k);
    if (total > bound) {
        fail(ErrorCode::too_large, "instance has " + std::to_string(total) +
                                       " committees, above the limit of " + std::to_string(bound));
    }
    return total;
}

std::string format_p(double p) {
    std::ostringstream out;
    out << p;
    return out.str();
}

// Minimum-key reduction over a stream of (key, item) pairs. Winners hold every
// item tied with the best key in arrival order; runner is the best key that
// lost, kept so the winner boundary can be re-examined once at the end.
template <typename Item>
struct ReduceState {
    std::optional<ComparisonKey> best;
    std::vector<Item> winners;
    std::optional<ComparisonKey> runner;
};

void keep_min(std::optional<ComparisonKey>& slot, const ComparisonKey& key) {
    if (!slot || compare(key, *slot) == std::strong_ordering::less) slot = key;
}

template <typename Item>
void absorb_key(ReduceState<Item>& state, ComparisonKey key, Item item) {
    if (!state.best) {
        state.best = std::move(key);
        state.winners.push_back(std::move(item));
        return;
    }
    const auto order = compare(key, *state.best);
    if (order == std::strong_ordering::less) {
        keep_min(state.runner, *state.best);
        state.best = std::move(key);
        state.winners.clear();
        state.winners.push_back(std::move(item));
    } else if (order == std::strong_ordering::equal) {
        state.winners.push_back(std::move(item));
    } else {
        keep_min(state.runner, key);
    }
}

// Associative merge; feeding blocks in rank order keeps winners in canonical
// order, so the outcome does not depend on the thread count.
template <typename Item>
void merge_states(ReduceState<Item>& into, ReduceState<Item>&& right) {
    if (!right.best) return;
    if (!into.best) {
        into = std::move(right);
        return;
    }
    const auto order = compare(*right.best, *into.best);
    if (order == std::strong_ordering::less) {
        keep_min(right.runner, *into.best);
        if (into.runner) keep_min(right.runner, *into.runner);
        into = std::move(right);
    } else if (order == std::strong_ordering::equal) {
        into.winners.insert(into.winners.end(), std::make_move_iterator(right.winners.begin()),
                            std::make_move_iterator(right.winners.end()));
        if (right.runner) keep_min(into.runner, *right.runner);
    } else {
        keep_min(into.runner, *right.best);
        if (right.runner) keep_min(into.runner, *right.runner);
    }
}

// Splits the committee ranks into contiguous blocks, folds each block on its
// own thread, and merges the per-block states in block order.
template <typename State, typename Absorb, typename Merge>
State parallel_scan(int n, int k, std::uint64_t total, int thread_request, const Absorb& absorb,
                    const Merge& merge) {
    int threads = thread_request > 0 ? thread_request
                                     : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    constexpr std::uint64_t kMinBlock = 1024;
    const std::uint64_t usable = std::max<std::uint64_t>(1, total / kMinBlock);
    threads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), usable));

    if (threads == 1) {
        State state;
        std::vector<int> members;
        CommitteeEnumerator it(n, k);
        while (it.next(members)) absorb(state, members);
        return state;
    }

    const std::uint64_t block = (total + static_cast<std::uint64_t>(threads) - 1) /
                                static_cast<std::uint64_t>(threads);
    std::vector<State> states(static_cast<std::size_t>(threads));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::uint64_t begin = static_cast<std::uint64_t>(w) * block;
                const std::uint64_t end = std::min(total, begin + block);
                if (begin >= end) return;
                CommitteeEnumerator it(n, k, begin);
                std::vector<int> members;
                for (std::uint64_t rank = begin; rank < end && it.next(members); ++rank) {
                    absorb(states[static_cast<std::size_t>(w)], members);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& worker : pool) worker.join();
    for (auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }
    State result = std::move(states[0]);
    for (int w = 1; w < threads; ++w) merge(result, std::move(states[static_cast<std::size_t>(w)]));
    return result;
}

ComparisonKey make_key(DistanceHistogram hist, KeyVariant variant, double p, int scale_distance) {
    switch (variant) {
        case KeyVariant::finite_p:
            return ComparisonKey::finite_p(std::move(hist), p, scale_distance);
        case KeyVariant::p_zero_limit: return ComparisonKey::p_zero_limit(std::move(hist));
        case KeyVariant::max_distance_lex:
            return ComparisonKey::max_distance_lex(std::move(hist));
        case KeyVariant::minimax: return ComparisonKey::minimax(std::move(hist));
    }
    fail(ErrorCode::variant_mismatch, "unknown key variant");
}

Method method_for(KeyVariant variant, double p) {
    switch (variant) {
        case KeyVariant::finite_p: return Method{Rule::pnorm, p};
        case KeyVariant::p_zero_limit: return Method{Rule::p_zero, 0.0};
        case KeyVariant::max_distance_lex: return Method{Rule::max_cover, 0.0};
        case KeyVariant::minimax: return Method{Rule::minimax, 0.0};
    }
    fail(ErrorCode::variant_mismatch, "unknown key variant");
}

std::optional<double> display_score(const DistanceHistogram& hist, KeyVariant variant, double p) {
    switch (variant) {
        case KeyVariant::finite_p: return pnorm_score(hist, p);
        case KeyVariant::p_zero_limit:
            return static_cast<double>(hist.total() - hist.nu(0));
        case KeyVariant::max_distance_lex: return std::nullopt;
        case KeyVariant::minimax: return static_cast<double>(hist.max_distance());
    }
    return std::nullopt;
}

const std::string kNearTieWarning =
    "near tie: top scores are within the floating-point comparison tolerance and could not be "
    "settled exactly; the winner split may be sensitive to rounding";

std::string coincidental_tie_warning(std::size_t count) {
    return "coincidental tie: " + std::to_string(count) +
           " committees share the optimal score with different distance distributions";
}

// Winner-set warnings are derived from final state only, never from the order
// comparisons happened in, so they are identical for every thread count.
void attach_warnings(ElectionResult& result, const BallotProfile& profile,
                     const ReduceState<Committee>& state) {
    bool near = false;
    if (state.best && state.runner) {
        const KeyComparison boundary = compare_keys(*state.best, *state.runner);
        near = boundary.near_tie && !boundary.exact_resolved;
    }
    // A winner group glued together by an unresolved floating-point tie is
    // itself a near tie, however clear the gap to the runner-up.
    if (!near && state.best) {
        for (std::size_t i = 1; i < result.winners.size() && !near; ++i) {
            const ComparisonKey other =
                make_key(distance_histogram(profile, result.winners[i]), state.best->variant(),
                         state.best->p(), state.best->scale_distance());
            const KeyComparison within = compare_keys(*state.best, other);
            near = within.near_tie && !within.exact_resolved;
        }
    }
    if (near) result.warnings.push_back(kNearTieWarning);
    if (result.winners.size() > 1) {
        const DistanceHistogram first = distance_histogram(profile, result.winners.front());
        for (std::size_t i = 1; i < result.winners.size(); ++i) {
            if (!(distance_histogram(profile, result.winners[i]) == first)) {
                result.warnings.push_back(coincidental_tie_warning(result.winners.size()));
                break;
            }
        }
    }
}

void mark_winner_rows(std::vector<ScoreRow>& rows, const std::vector<Committee>& winners) {
    for (ScoreRow& row : rows) {
        row.winner = std::binary_search(winners.begin(), winners.end(), row.committee);
    }
}

}  // namespace

ElectionResult elect_exact(const BallotProfile& profile, int k, KeyVariant variant, double p,
                           const SolveOptions& options) {
    check_committee_size(profile, k);
    const int n = profile.candidate_count();
    const std::uint64_t total = checked_total(profile, k, options.enumeration_bound);
    const int scale = variant == KeyVariant::finite_p ? max_scale_distance(profile, k) : 1;

    using State = ReduceState<Committee>;
    State state;
    std::optional<std::vector<ScoreRow>> rows;

    if (options.with_scores) {
        if (variant == KeyVariant::max_distance_lex) {
            fail(ErrorCode::variant_mismatch,
                 "the lexicographic variant has no per-committee scalar score");
        }
        if (total > kMaxTableRows) {
            fail(ErrorCode::too_large, "score table would need " + std::to_string(total) +
                                           " rows, above the limit of " +
                                           std::to_string(kMaxTableRows));
        }
        rows.emplace();
        rows->reserve(static_cast<std::size_t>(total));
        std::vector<int> members;
        CommitteeEnumerator it(n, k);
        while (it.next(members)) {
            Committee committee(members, n);
            DistanceHistogram hist = distance_histogram(profile, committee);
            rows->push_back(ScoreRow{committee, *display_score(hist, variant, p), false});
            absorb_key(state, make_key(std::move(hist), variant, p, scale), std::move(committee));
        }
    } else {
        state = parallel_scan<State>(
            n, k, total, options.threads,
            [&](State& local, const std::vector<int>& members) {
                Committee committee(members, n);
                DistanceHistogram hist = distance_histogram(profile, committee);
                absorb_key(local, make_key(std::move(hist), variant, p, scale),
                           std::move(committee));
            },
            [](State& into, State&& right) { merge_states(into, std::move(right)); });
    }

    ElectionResult result;
    result.method = method_for(variant, p);
    result.winners = std::move(state.winners);
    result.tie_flag = result.winners.size() > 1;
    if (state.best) result.best_score = display_score(state.best->histogram(), variant, p);
    if (rows) {
        mark_winner_rows(*rows, result.winners);
        result.scores = std::move(rows);
    }
    attach_warnings(result, profile, state);
    return result;
}

ElectionResult elect_minisum(const BallotProfile& profile, int k, const SolveOptions& options) {
    check_committee_size(profile, k);
    if (options.with_scores) {
        // The score table enumerates anyway, so reuse the exact path; at p = 1
        // the norm is exactly the summed distance and the winner sets agree.
        ElectionResult result = elect_exact(profile, k, KeyVariant::finite_p, 1.0, options);
        result.method = Method{Rule::minisum, 0.0};
        return result;
    }

    const int n = profile.candidate_count();
    std::vector<std::int64_t> score(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        score[static_cast<std::size_t>(i)] =
            profile.mode() == Mode::binary ? profile.approvals(i) : profile.net_approvals(i);
    }

    // Seat the k best scores; candidates tied at the threshold expand into
    // every committee they can fill the remaining seats with.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
    });
    const std::int64_t threshold = score[static_cast<std::size_t>(order[static_cast<std::size_t>(k - 1)])];
    std::vector<int> sure;
    std::vector<int> border;
    for (int i = 0; i < n; ++i) {
        if (score[static_cast<std::size_t>(i)] > threshold) {
            sure.push_back(i);
        } else if (score[static_cast<std::size_t>(i)] == threshold) {
            border.push_back(i);
        }
    }
    const int open_seats = k - static_cast<int>(sure.size());
    const std::uint64_t expansions = committee_count(static_cast<int>(border.size()), open_seats);
    if (expansions > options.enumeration_bound) {
        fail(ErrorCode::too_large, "tie at the last seat expands into " +
                                       std::to_string(expansions) +
                                       " committees, above the limit of " +
                                       std::to_string(options.enumeration_bound));
    }

    ElectionResult result;
    result.method = Method{Rule::minisum, 0.0};
    std::vector<int> pick;
    CommitteeEnumerator it(static_cast<int>(border.size()), open_seats);
    while (it.next(pick)) {
        std::vector<int> members = sure;
        for (int position : pick) members.push_back(border[static_cast<std::size_t>(position)]);
        std::sort(members.begin(), members.end());
        result.winners.emplace_back(std::move(members), n);
    }
    std::sort(result.winners.begin(), result.winners.end());
    result.tie_flag = result.winners.size() > 1;

    const DistanceHistogram first = distance_histogram(profile, result.winners.front());
    double total_distance = 0.0;
    for (const auto& [d, count] : first.counts()) {
        total_distance += static_cast<double>(d) * static_cast<double>(count);
    }
    result.best_score = total_distance;
    for (std::size_t i = 1; i < result.winners.size(); ++i) {
        if (!(distance_histogram(profile, result.winners[i]) == first)) {
            result.warnings.push_back(coincidental_tie_warning(result.winners.size()));
            break;
        }
    }
    return result;
}

ElectionResult elect_max_cover(const BallotProfile& profile, int k, const SolveOptions& options) {
    SolveOptions inner = options;
    inner.with_scores = false;
    ElectionResult result = elect_exact(profile, k, KeyVariant::max_distance_lex, 0.0, inner);
    result.method = Method{Rule::max_cover, 0.0};
    result.coverages.reserve(result.winners.size());
    for (const Committee& winner : result.winners) {
        result.coverages.push_back(covered_count(profile, winner));
    }
    result.best_score = static_cast<double>(result.coverages.front());

    if (options.with_scores) {
        const int n = profile.candidate_count();
        const std::uint64_t total = checked_total(profile, k, options.enumeration_bound);
        if (total > kMaxTableRows) {
            fail(ErrorCode::too_large, "score table would need " + std::to_string(total) +
                                           " rows, above the limit of " +
                                           std::to_string(kMaxTableRows));
        }
        std::vector<ScoreRow> rows;
        rows.reserve(static_cast<std::size_t>(total));
        std::vector<int> members;
        CommitteeEnumerator it(n, k);
        while (it.next(members)) {
            Committee committee(members, n);
            const auto covered = static_cast<double>(covered_count(profile, committee));
            rows.push_back(ScoreRow{std::move(committee), covered, false});
        }
        mark_winner_rows(rows, result.winners);
        result.scores = std::move(rows);
    }
    return result;
}

ElectionResult elect_greedy_cover(const BallotProfile& profile, int k) {
    check_committee_size(profile, k);
    const int n = profile.candidate_count();
    const auto& ballots = profile.ballots();

    std::vector<char> seated(static_cast<std::size_t>(n), 0);
    std::vector<char> covered(ballots.size(), 0);
    // Rejected candidates not yet seated; once more of them remain than there
    // are open seats, the ballot is covered no matter how the seats fill.
    std::vector<int> rejected_out(ballots.size());
    for (std::size_t b = 0; b < ballots.size(); ++b) {
        rejected_out[b] = ballots[b].rejection_count();
    }

    std::vector<int> members;
    members.reserve(static_cast<std::size_t>(k));
    for (int round = 0; round < k; ++round) {
        const int seats_left_after = k - (round + 1);
        int choice = -1;
        std::int64_t choice_gain = -1;
        for (int i = 0; i < n; ++i) {
            if (seated[static_cast<std::size_t>(i)]) continue;
            std::int64_t gain = 0;
            for (std::size_t b = 0; b < ballots.size(); ++b) {
                if (covered[b]) continue;
                const std::int8_t opinion = ballots[b].opinions()[static_cast<std::size_t>(i)];
                const int rejected_after = rejected_out[b] - (opinion == -1 ? 1 : 0);
                if (opinion == 1 || rejected_after > seats_left_after) {
                    gain += ballots[b].weight();
                }
            }
            if (choice < 0 || gain > choice_gain ||
                (gain == choice_gain && profile.approvals(i) > profile.approvals(choice))) {
                choice = i;
                choice_gain = gain;
            }
        }
        seated[static_cast<std::size_t>(choice)] = 1;
        members.push_back(choice);
        for (std::size_t b = 0; b < ballots.size(); ++b) {
            const std::int8_t opinion = ballots[b].opinions()[static_cast<std::size_t>(choice)];
            if (opinion == -1) rejected_out[b] -= 1;
            if (covered[b]) continue;
            if (opinion == 1 || rejected_out[b] > seats_left_after) covered[b] = 1;
        }
    }

    std::sort(members.begin(), members.end());
    Committee committee(std::move(members), n);
    const std::int64_t coverage = covered_count(profile, committee);

    ElectionResult result;
    result.method = Method{Rule::greedy, 0.0};
    result.winners.push_back(std::move(committee));
    result.best_score = static_cast<double>(coverage);
    result.coverages.push_back(coverage);
    return result;
}

SweepMatrix sweep(const BallotProfile& profile, int k, const std::vector<double>& ps,
                  SweepReport report, const SolveOptions& options) {
    check_committee_size(profile, k);
    if (ps.empty()) fail(ErrorCode::invalid_p, "sweep needs at least one p value");
    const int n = profile.candidate_count();
    const std::uint64_t total =
        checked_total(profile, k, std::min(options.enumeration_bound, kMaxTableRows));
    const int scale = max_scale_distance(profile, k);

    SweepMatrix matrix;
    matrix.ps = ps;
    matrix.report = report;
    matrix.committees.reserve(static_cast<std::size_t>(total));
    std::vector<DistanceHistogram> histograms;
    histograms.reserve(static_cast<std::size_t>(total));
    std::vector<int> members;
    CommitteeEnumerator it(n, k);
    while (it.next(members)) {
        Committee committee(members, n);
        histograms.push_back(distance_histogram(profile, committee));
        matrix.committees.push_back(std::move(committee));
    }
    matrix.values.assign(histograms.size(), std::vector<double>(ps.size(), 0.0));
    matrix.minimizers.resize(ps.size());

    for (std::size_t column = 0; column < ps.size(); ++column) {
        const double p = ps[column];
        ReduceState<std::size_t> state;
        for (std::size_t row = 0; row < histograms.size(); ++row) {
            matrix.values[row][column] = report == SweepReport::norm
                                             ? pnorm_score(histograms[row], p)
                                             : power_sum(histograms[row], p);
            absorb_key(state, ComparisonKey::finite_p(histograms[row], p, scale), row);
        }
        matrix.minimizers[column] = state.winners;
        bool near = false;
        if (state.best && state.runner) {
            const KeyComparison boundary = compare_keys(*state.best, *state.runner);
            near = boundary.near_tie && !boundary.exact_resolved;
        }
        if (state.best) {
            for (std::size_t i = 1; i < state.winners.size() && !near; ++i) {
                const KeyComparison within = compare_keys(
                    *state.best,
                    ComparisonKey::finite_p(histograms[state.winners[i]], p, scale));
                near = within.near_tie && !within.exact_resolved;
            }
        }
        if (near) {
            matrix.warnings.push_back("p=" + format_p(p) + ": " + kNearTieWarning);
        }
        for (std::size_t i = 1; i < state.winners.size(); ++i) {
            if (!(histograms[state.winners[i]] == histograms[state.winners.front()])) {
                matrix.warnings.push_back("p=" + format_p(p) + ": " +
                                          coincidental_tie_warning(state.winners.size()));
                break;
            }
        }
    }
    return matrix;
}

}  // namespace pnelect
