#include <benchmark/benchmark.h>

#include <vector>

#include "prnu/denoise.hpp"
#include "prnu/fingerprint.hpp"
#include "prnu/synthcam.hpp"

namespace {

prnu::Plane test_frame(std::uint32_t side) {
  const auto model = prnu::synth::gen_model(side, side, 0.02, 3.0, 7);
  const auto scene = prnu::synth::render_scene(prnu::synth::SceneSpec::textured(8, 60), side, side, 11);
  return prnu::synth::render_frame(model, scene, 13);
}

void BM_ExtractResidual(benchmark::State& state) {
  const auto side = static_cast<std::uint32_t>(state.range(0));
  const prnu::Plane frame = test_frame(side);
  const prnu::DenoiseParams params;
  for (auto _ : state) {
    auto r = prnu::extract_residual(frame, params);
    benchmark::DoNotOptimize(r.plane.data.data());
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(side) * side);
}
BENCHMARK(BM_ExtractResidual)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SdaAverage(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  std::vector<prnu::Plane> frames(depth, test_frame(256));
  for (auto _ : state) {
    auto avg = prnu::sda_average(frames);
    benchmark::DoNotOptimize(avg.data.data());
  }
}
BENCHMARK(BM_SdaAverage)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

// Whole pipeline over the same 50 frames at several depths.
void BM_ExtractFingerprint(benchmark::State& state) {
  const auto depth = static_cast<std::uint32_t>(state.range(0));
  const auto model = prnu::synth::gen_model(256, 256, 0.02, 3.0, 7);
  const auto scene = prnu::synth::render_scene(prnu::synth::SceneSpec::flat(128), 256, 256, 0);
  std::vector<prnu::Plane> frames;
  for (std::uint64_t i = 0; i < 50; ++i) frames.push_back(prnu::synth::render_frame(model, scene, i));
  for (auto _ : state) {
    prnu::PlaneListStream stream(frames);
    auto fp = prnu::extract_fingerprint(stream, prnu::ExtractionSpec::sda(depth));
    benchmark::DoNotOptimize(fp.khat.data.data());
  }
}
BENCHMARK(BM_ExtractFingerprint)->Arg(1)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
