#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "edgestat/airy.hpp"
#include "edgestat/cdkernel.hpp"
#include "edgestat/equilibrium.hpp"
#include "edgestat/harness/config.hpp"
#include "edgestat/harness/mcmc.hpp"
#include "edgestat/linearize.hpp"
#include "edgestat/rng.hpp"

using namespace edgestat;

namespace {

std::shared_ptr<const EquilibriumSolution> gaussian_solution() {
  static const auto sol = std::make_shared<const EquilibriumSolution>(SmoothField(ConfiningField::gaussian(), 3.0));
  return sol;
}

void BM_Recurrence(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const WeightSpec w = make_weight(gaussian_solution(), N, 3.0);
  recurrence(w, N);  // first call builds the cached Gauss-Legendre rules
  for (auto _ : state) benchmark::DoNotOptimize(recurrence(w, N));
}
BENCHMARK(BM_Recurrence)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_KernelDiagonal(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const CDKernel K(make_weight(gaussian_solution(), N, 3.0));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(K.diagonal(t));
    t = t > 1.4 ? -1.4 : t + 0.01;
  }
}
BENCHMARK(BM_KernelDiagonal)->Arg(50)->Arg(200);

void BM_GapProbability(benchmark::State& state) {
  const CDKernel K(make_weight(gaussian_solution(), 200, 3.0));
  for (auto _ : state) benchmark::DoNotOptimize(gap_probability(K, 1.45, 3.0));
}
BENCHMARK(BM_GapProbability)->Unit(benchmark::kMillisecond);

void BM_TracyWidom(benchmark::State& state) {
  TracyWidomOptions opt;
  opt.check_doubling = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(tracy_widom(-1.0, opt));
}
BENCHMARK(BM_TracyWidom)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Airy(benchmark::State& state) {
  double t = -11.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(airy(t));
    t = t > 39.0 ? -11.0 : t + 0.37;
  }
}
BENCHMARK(BM_Airy);

void BM_FixedPoint(benchmark::State& state) {
  const InteractionSpec h({{-0.1, 1.0}});
  FixedPointOptions opt;
  opt.L = 3.0;
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point(ConfiningField::gaussian(), h, opt));
}
BENCHMARK(BM_FixedPoint)->Unit(benchmark::kMillisecond);

void BM_FourierU(benchmark::State& state) {
  const InteractionSpec h({{-0.1, 1.0}});
  const HoeffdingStatistic stat(h, gaussian_solution());
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.4, 1.4);
  std::vector<double> x(20);
  for (double& v : x) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(fourier_U(x, stat));
}
BENCHMARK(BM_FourierU)->Unit(benchmark::kMicrosecond);

void BM_McmcSweep(benchmark::State& state) {
  EnsembleConfig cfg;
  cfg.N = static_cast<int>(state.range(0));
  cfg.L = 2.9;
  cfg.h = InteractionSpec({{-0.1, 1.0}});
  Chain chain(cfg, initial_configuration(cfg), make_stream(1, 0));
  for (auto _ : state) chain.sweep(false);
}
BENCHMARK(BM_McmcSweep)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
