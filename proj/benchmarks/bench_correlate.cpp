#include <benchmark/benchmark.h>

#include <random>

#include "prnu/correlate.hpp"

namespace {

prnu::Plane noise(std::uint32_t side, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<float> n;
  prnu::Plane p(side, side);
  for (auto& v : p.data) v = n(rng);
  return p;
}

void BM_NccSurface(benchmark::State& state) {
  const auto side = static_cast<std::uint32_t>(state.range(0));
  const auto a = noise(side, 1), b = noise(side, 2);
  for (auto _ : state) {
    auto s = prnu::ncc_surface(a, b);
    benchmark::DoNotOptimize(s.values.data());
  }
}
BENCHMARK(BM_NccSurface)->Arg(64)->Arg(256)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_Pce(benchmark::State& state) {
  const auto s = prnu::ncc_surface(noise(256, 3), noise(256, 4));
  for (auto _ : state) benchmark::DoNotOptimize(prnu::pce(s).pce);
}
BENCHMARK(BM_Pce);

}  // namespace
