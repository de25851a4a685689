// Microbenchmarks for the hot paths: histogram construction, exhaustive
// elections (single- and multi-threaded), multi-p sweeps, and the greedy
// cover heuristic that handles instances too large to enumerate.
//
// Run all:          ./benchmarks/pnelect_bench
// Run a subset:     ./benchmarks/pnelect_bench --benchmark_filter=ElectExact

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pnelect/combinations.hpp"
#include "pnelect/metrics.hpp"
#include "pnelect/solvers.hpp"
#include "pnelect/types.hpp"

namespace {

using namespace pnelect;

// Deterministic synthetic electorate: `rows` random opinion vectors over n
// candidates with weights in [1, 20]. Every candidate is approved with
// probability 0.3; in ternary mode it is instead rejected with probability
// 0.15. Duplicate rows merge, so m stays fixed while the distinct-ballot
// count may come out slightly below `rows`.
BallotProfile random_profile(int n, int rows, Mode mode, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) names.push_back("C" + std::to_string(i));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> weight(1, 20);
    std::vector<RawBallot> raw;
    raw.reserve(static_cast<std::size_t>(rows));
    for (int row = 0; row < rows; ++row) {
        std::vector<std::int8_t> opinions(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            const double toss = coin(rng);
            if (toss < 0.3) {
                opinions[static_cast<std::size_t>(i)] = 1;
            } else if (mode == Mode::ternary && toss < 0.45) {
                opinions[static_cast<std::size_t>(i)] = -1;
            }
        }
        raw.emplace_back(std::move(opinions), weight(rng));
    }
    return build_profile(CandidateRoster(std::move(names)), raw, mode);
}

Committee spread_committee(int n, int k) {
    std::vector<int> members;
    members.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) members.push_back(i * n / k);
    return Committee(std::move(members), n);
}

// One ballot-set-to-committee histogram; the kernel inside every exhaustive
// scan. Arg0 = candidates, Arg1 = distinct ballot rows, Arg2 = 1 for ternary.
void BM_DistanceHistogram(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int rows = static_cast<int>(state.range(1));
    const Mode mode = state.range(2) ? Mode::ternary : Mode::binary;
    const BallotProfile profile = random_profile(n, rows, mode, 17);
    const Committee committee = spread_committee(n, n / 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(distance_histogram(profile, committee));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(profile.ballots().size()));
}
BENCHMARK(BM_DistanceHistogram)
    ->ArgNames({"n", "rows", "ternary"})
    ->Args({24, 1000, 0})
    ->Args({64, 1000, 0})
    ->Args({128, 1000, 0})
    ->Args({64, 1000, 1});

// Full exhaustive election at p = 2. Arg0 = candidates, Arg1 = seats; the
// committee count C(n, k) drives the cost.
void BM_ElectExact(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const BallotProfile profile = random_profile(n, 200, Mode::binary, 29);
    SolveOptions options;
    options.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(elect_exact(profile, k, KeyVariant::finite_p, 2.0, options));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(committee_count(n, k)));
}
BENCHMARK(BM_ElectExact)
    ->ArgNames({"n", "k"})
    ->Args({16, 4})
    ->Args({20, 4})
    ->Args({24, 4})
    ->Args({24, 6});

// The same scan with the work split across worker threads. Arg2 = threads;
// results are identical for every thread count, only the wall time moves.
void BM_ParallelScan(benchmark::State& state) {
    const int n = 26;
    const int k = 5;
    const BallotProfile profile = random_profile(n, 400, Mode::binary, 43);
    SolveOptions options;
    options.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(elect_exact(profile, k, KeyVariant::finite_p, 2.0, options));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(committee_count(n, k)));
}
BENCHMARK(BM_ParallelScan)
    ->ArgNames({"threads"})
    ->Arg(1)
    ->Arg(2)
    ->Arg(4)
    ->Arg(8)
    ->UseRealTime();

// Whole-matrix sweep across six exponents; reuses one histogram pass per
// committee, so it should cost far less than six separate elections.
void BM_Sweep(benchmark::State& state) {
    const BallotProfile profile = random_profile(16, 200, Mode::binary, 59);
    const std::vector<double> ps = {1.0, 2.0, 3.0, 4.0, 10.0, 100.0};
    SolveOptions options;
    options.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep(profile, 4, ps, SweepReport::norm, options));
    }
}
BENCHMARK(BM_Sweep);

// Analytic minisum fast path on an instance whose C(64, 8) is far beyond any
// enumeration bound.
void BM_Minisum(benchmark::State& state) {
    const BallotProfile profile = random_profile(64, 2000, Mode::binary, 71);
    for (auto _ : state) {
        benchmark::DoNotOptimize(elect_minisum(profile, 8));
    }
}
BENCHMARK(BM_Minisum);

// Greedy cover, the other large-instance path. Arg0 = candidates.
void BM_GreedyCover(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BallotProfile profile = random_profile(n, 2000, Mode::binary, 83);
    for (auto _ : state) {
        benchmark::DoNotOptimize(elect_greedy_cover(profile, 10));
    }
}
BENCHMARK(BM_GreedyCover)->ArgNames({"n"})->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
