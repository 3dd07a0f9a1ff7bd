#include <benchmark/benchmark.h>

#include <vector>

#include "rrc/core_game.hpp"
#include "rrc/generate.hpp"
#include "rrc/graph.hpp"
#include "rrc/interval.hpp"
#include "rrc/rmb.hpp"

namespace {

static void BM_IntervalSweep(benchmark::State& state) {
    const auto jobs =
        rrc::gen_intervals(static_cast<int>(state.range(0)), 30, 10, 4242);
    for (auto _ : state) {
        auto res = rrc::solve_ris(jobs);
        benchmark::DoNotOptimize(res.certificate.worst_case_value);
    }
}
BENCHMARK(BM_IntervalSweep)->Arg(6)->Arg(8)->Arg(10);

static void BM_ColoredGridSweep(benchmark::State& state) {
    const auto jobs = rrc::gen_intervals(static_cast<int>(state.range(0)), 40, 10, 99);
    const auto colored =
        rrc::build_isc_instance(jobs, rrc::kNoElement, rrc::kNoElement, rrc::Rational(10));
    for (auto _ : state) {
        auto sel = rrc::solve_isc_dp(colored);
        benchmark::DoNotOptimize(sel.value);
    }
}
BENCHMARK(BM_ColoredGridSweep)->Arg(8)->Arg(12)->Arg(16);

static void BM_RecoverableBasis(benchmark::State& state) {
    const auto m = rrc::Matroid::uniform(static_cast<int>(state.range(0)), 3);
    const auto w = rrc::gen_weights(static_cast<int>(state.range(0)), 0, 9, 7);
    for (auto _ : state) {
        auto cert = rrc::solve_kk_rmb(m, w, 1);
        benchmark::DoNotOptimize(cert.worst_case_value);
    }
}
BENCHMARK(BM_RecoverableBasis)->Arg(7)->Arg(9);

static void BM_MaxMatching(benchmark::State& state) {
    const auto sample =
        rrc::gen_bipartite_graph(static_cast<int>(state.range(0)), 0.4, 321);
    for (auto _ : state) {
        auto res = rrc::max_matching(sample.graph);
        benchmark::DoNotOptimize(res.size);
    }
}
BENCHMARK(BM_MaxMatching)->Arg(16)->Arg(32);

static void BM_ExhaustiveGame(benchmark::State& state) {
    const auto family = rrc::gen_explicit_family(static_cast<int>(state.range(0)), 17);
    const auto tops = rrc::maximal_sets_of_family(family);
    const auto sys = rrc::FeasibilitySystem::from_maximal_sets(
        static_cast<int>(state.range(0)), tops);
    const auto w = rrc::gen_weights(static_cast<int>(state.range(0)), 0, 9, 18);
    for (auto _ : state) {
        auto cert = rrc::brute_force_rp(sys, w, 1, 1);
        benchmark::DoNotOptimize(cert.worst_case_value);
    }
}
BENCHMARK(BM_ExhaustiveGame)->Arg(8)->Arg(10);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
