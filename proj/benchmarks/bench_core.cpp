#include <benchmark/benchmark.h>

#include <vector>

#include "eprstat/model.hpp"
#include "eprstat/nullmodels.hpp"
#include "eprstat/observables.hpp"
#include "eprstat/student_t.hpp"

using namespace eprstat;

namespace {

TreatmentDataset uniform_dataset(std::size_t rounds)
{
    Matrix<double> w(4, 4, 0.25);
    auto traj = simulate_chain(std::vector<double>(4, 0.25), w, rounds, Seed{1});
    return TreatmentDataset("bench", StateSpace::square_2x2(), {std::move(traj)});
}

}  // namespace

static void BM_EstimateMarkov(benchmark::State& state)
{
    const auto data = uniform_dataset(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_markov(data));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateMarkov)->Arg(200)->Arg(20000);

static void BM_FullReport(benchmark::State& state)
{
    const auto chain = estimate_markov(uniform_dataset(1000));
    for (auto _ : state) {
        benchmark::DoNotOptimize(full_report(chain, ZeroFluxPolicy::skip()));
    }
}
BENCHMARK(BM_FullReport);

static void BM_DosBaseline(benchmark::State& state)
{
    const std::vector<double> dos{0.4, 0.3, 0.2, 0.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            dos_baseline(dos, static_cast<std::size_t>(state.range(0)), 1000, ZeroFluxPolicy::skip(), Seed{2}));
    }
}
BENCHMARK(BM_DosBaseline)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_VnmNull(benchmark::State& state)
{
    const VnmParams params{0.5, 0.6, 1, 500, {}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(vnm_null_distribution(params, 1000, ZeroFluxPolicy::skip(), Seed{3}));
    }
}
BENCHMARK(BM_VnmNull)->Unit(benchmark::kMillisecond);

static void BM_StudentTCdf(benchmark::State& state)
{
    double t = -4.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(student_t_cdf(t, 17.5));
        t = t > 4.0 ? -4.0 : t + 0.01;
    }
}
BENCHMARK(BM_StudentTCdf);

BENCHMARK_MAIN();
