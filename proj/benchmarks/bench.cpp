#include <benchmark/benchmark.h>

#include <vector>

#include "soliton/darboux.hpp"
#include "soliton/metrics.hpp"
#include "soliton/nlse.hpp"
#include "soliton/zakharov_shabat.hpp"

using namespace soliton;

namespace {

DiscreteSpectrum order(std::size_t n) {
  const std::vector<double> sigma{0.9, 0.7, 0.5};
  const std::vector<double> omega{0.2, -0.1, 0.0};
  const std::vector<double> dt{-1.0, 1.0, 0.0};
  const std::vector<double> phi{0.3, 1.2, 0.0};
  return make_spectrum(std::span(sigma).first(n), std::span(omega).first(n), std::span(dt).first(n),
                       std::span(phi).first(n));
}

void bm_synthesize(benchmark::State& state) {
  const auto s = order(static_cast<std::size_t>(state.range(0)));
  const TimeGrid g = auto_grid(s);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(s, g));
  state.counters["samples"] = static_cast<double>(g.n_samples);
}
BENCHMARK(bm_synthesize)->DenseRange(1, 3);

void bm_scatter(benchmark::State& state) {
  const auto s = order(2);
  const auto q = synthesize(s, auto_grid(s));
  for (auto _ : state) benchmark::DoNotOptimize(scatter(q, cplx(0.1, 0.6)));
}
BENCHMARK(bm_scatter);

void bm_nft(benchmark::State& state) {
  const auto s = order(static_cast<std::size_t>(state.range(0)));
  const auto q = synthesize(s, auto_grid(s));
  for (auto _ : state) benchmark::DoNotOptimize(nft(q));
}
BENCHMARK(bm_nft)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void bm_propagate_100_steps(benchmark::State& state) {
  const auto s = order(2);
  const auto q = synthesize(s, auto_grid(s));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(q, PropagationPlan{0.1, 100}));
}
BENCHMARK(bm_propagate_100_steps)->Unit(benchmark::kMillisecond);

void bm_measure(benchmark::State& state) {
  const auto s = order(2);
  const auto q = synthesize(s, auto_grid(s));
  for (auto _ : state) benchmark::DoNotOptimize(measure(q, MeasureConfig{}));
}
BENCHMARK(bm_measure);

void bm_t_max_b_max(benchmark::State& state) {
  const auto s = order(static_cast<std::size_t>(state.range(0)));
  MeasureConfig c;
  c.phase_points = 16;
  for (auto _ : state) benchmark::DoNotOptimize(t_max_b_max(s, c));
}
BENCHMARK(bm_t_max_b_max)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
