#include "smoothprog/smoothprog.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace smoothprog;

namespace {

void BM_Sieve(benchmark::State& state)
{
    const auto limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(PrimeTable(limit).primes().size());
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sieve)->RangeMultiplier(10)->Range(10'000, 10'000'000)->Unit(benchmark::kMillisecond);

void BM_PsiExact(benchmark::State& state)
{
    const double x = std::pow(10.0, static_cast<double>(state.range(0)));
    const PrimeTable table(100);
    for (auto _ : state)
        benchmark::DoNotOptimize(psi_exact(x, 100, table));
}
BENCHMARK(BM_PsiExact)->DenseRange(5, 9, 2)->Unit(benchmark::kMillisecond);

void BM_PsiProgression(benchmark::State& state)
{
    const PrimeTable table(100);
    const auto q = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(psi_progression_exact(1e7, 100, q, table).psi_q);
}
BENCHMARK(BM_PsiProgression)->Arg(7)->Arg(101)->Arg(9973)->Unit(benchmark::kMillisecond);

void BM_BuildGroup(benchmark::State& state)
{
    const auto q = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_group(q).characters().size());
}
BENCHMARK(BM_BuildGroup)->Arg(360)->Arg(9973)->Arg(360360);

void BM_CharacterSum(benchmark::State& state)
{
    const PrimeTable table(100);
    const auto g = build_group(101);
    const auto chi = g.characters()[1];
    for (auto _ : state)
        benchmark::DoNotOptimize(psi_character_exact(1e7, 100, chi, table));
}
BENCHMARK(BM_CharacterSum)->Unit(benchmark::kMillisecond);

void BM_SolveAlpha(benchmark::State& state)
{
    const PrimeTable table(100'000);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_alpha(1e20, 1e5, table));
}
BENCHMARK(BM_SolveAlpha)->Unit(benchmark::kMicrosecond);

void BM_MellinTransform(benchmark::State& state)
{
    const MellinEvaluator ev(SmoothWeight(WeightSide::lower, 0.05));
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(mellin_transform(ev, {0.7, t}));
}
BENCHMARK(BM_MellinTransform)->Arg(1)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Contour(benchmark::State& state)
{
    const PrimeTable table(30);
    const MellinEvaluator ev(SmoothWeight(WeightSide::lower, 0.05));
    const auto chi0 = build_group(7).principal();
    for (auto _ : state)
        benchmark::DoNotOptimize(contour_psi(1e4, 30, chi0, ev, table).value);
}
BENCHMARK(BM_Contour)->Unit(benchmark::kMillisecond);

void BM_MinDistOverT(benchmark::State& state)
{
    const PrimeTable table(1000);
    const double alpha = solve_alpha(1e6, 1e3, table);
    const auto chi = build_group(7).character({3});
    for (auto _ : state)
        benchmark::DoNotOptimize(min_dist_over_t(chi, alpha, 1e3, std::sqrt(7.0), 0.01, table).d2_min);
}
BENCHMARK(BM_MinDistOverT)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
