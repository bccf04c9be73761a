#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "prnu/denoise.hpp"
#include "prnu/error.hpp"
#include "prnu/synthcam.hpp"

namespace {

using prnu::DenoiseParams;
using prnu::Plane;

double max_abs(const Plane& p) {
  double m = 0;
  for (float v : p.data) m = std::max(m, double(std::abs(v)));
  return m;
}

TEST(WaveletDenoise, ConstantPlaneIsAFixedPoint) {
  const Plane flat(64, 48, 128.0f);
  const Plane out = prnu::wavelet_denoise(flat, {});
  for (float v : out.data) EXPECT_NEAR(v, 128.0f, 1e-3);
  EXPECT_LT(max_abs(prnu::extract_residual(flat, {}).plane), 1e-3);
}

TEST(WaveletDenoise, ImpulseIsAttenuatedButNotRemoved) {
  Plane p(64, 64, 128.0f);
  p.at(32, 32) += 50.0f;
  const float c = prnu::wavelet_denoise(p, {}).at(32, 32);
  EXPECT_GT(c, 128.0f);
  EXPECT_LT(c, 178.0f);
}

TEST(WaveletDenoise, SuppressesWhiteNoiseAtTheAssumedLevel) {
  double ratio_sum = 0;
  for (unsigned seed = 1; seed <= 20; ++seed) {
    const Plane noise = oracle::gaussian_plane(128, 128, 3.0, seed, 128.0);
    const Plane out = prnu::wavelet_denoise(noise, {});
    const double in_var = oracle::sample_variance(oracle::as_doubles(noise));
    const double out_var = oracle::sample_variance(oracle::as_doubles(out));
    EXPECT_LT(out_var, 0.25 * in_var) << "seed " << seed;
    ratio_sum += out_var / in_var;
  }
  EXPECT_LT(ratio_sum / 20, 0.25);
}

TEST(WaveletDenoise, RejectsPlanesBelowTheLevelSize) {
  try {
    prnu::wavelet_denoise(Plane(15, 64), {});
    FAIL();
  } catch (const prnu::Error& e) {
    EXPECT_EQ(e.code(), prnu::Errc::PlaneTooSmall);
  }
  DenoiseParams two_levels;
  two_levels.wavelet_levels = 2;
  EXPECT_NO_THROW(prnu::wavelet_denoise(Plane(4, 4, 1.0f), two_levels));
}

TEST(DenoiseParams, Validation) {
  auto bad = [](auto mutate) {
    DenoiseParams p;
    mutate(p);
    try {
      p.validate();
    } catch (const prnu::Error& e) {
      return e.code() == prnu::Errc::BadParameter;
    }
    return false;
  };
  EXPECT_TRUE(bad([](DenoiseParams& p) { p.sigma0_sq = 0; }));
  EXPECT_TRUE(bad([](DenoiseParams& p) { p.wavelet_levels = 0; }));
  EXPECT_TRUE(bad([](DenoiseParams& p) { p.window_sizes = {}; }));
  EXPECT_TRUE(bad([](DenoiseParams& p) { p.window_sizes = {3, 4}; }));
  EXPECT_NO_THROW(DenoiseParams{}.validate());
}

TEST(ExtractResidual, UniformOffsetDoesNotChangeTheResidual) {
  const Plane a = oracle::gaussian_plane(96, 80, 20.0, 3, 100.0);
  Plane b = a;
  for (auto& v : b.data) v += 10.0f;
  const Plane ra = prnu::extract_residual(a, {}).plane;
  const Plane rb = prnu::extract_residual(b, {}).plane;
  for (std::size_t i = 0; i < ra.size(); ++i) EXPECT_NEAR(ra.data[i], rb.data[i], 1e-4);
}

TEST(ExtractResidual, IsDeterministic) {
  const Plane a = oracle::gaussian_plane(64, 64, 20.0, 9, 100.0);
  EXPECT_EQ(prnu::extract_residual(a, {}).plane, prnu::extract_residual(a, {}).plane);
}

TEST(ExtractResidual, CarriesTheSourceFrameCount) {
  const auto r = prnu::extract_residual(Plane(32, 32, 5.0f), {}, 30);
  EXPECT_EQ(r.source_frames, 30u);
  EXPECT_EQ(r.width(), 32u);
}

TEST(ExtractResidual, CorrelatesWithInjectedPrnu) {
  const auto model = prnu::synth::gen_model(256, 256, 0.02, 3.0, 21);
  const Plane scene = prnu::synth::render_scene(prnu::synth::SceneSpec::flat(128), 256, 256, 0);
  const Plane frame = prnu::synth::render_frame(model, scene, 5);
  Plane expected = model.k_field;
  for (auto& v : expected.data) v *= 128.0f;
  const auto w = prnu::postprocess_residual(prnu::extract_residual(frame, {}));
  EXPECT_GT(oracle::pearson(w.plane, expected), 0.3);
}

TEST(ExtractResidual, AveragedResidualsApproachTheTrueField) {
  // Correlation with K should rise with the number of averaged residuals.
  int monotone = 0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const auto model = prnu::synth::gen_model(128, 128, 0.02, 3.0, 1000 + s);
    const Plane scene = prnu::synth::render_scene(prnu::synth::SceneSpec::flat(128), 128, 128, 0);
    std::vector<double> sum(128 * 128, 0.0);
    std::vector<double> corr;
    for (int n = 1; n <= 50; ++n) {
      const Plane f = prnu::synth::render_frame(model, scene, prnu::synth::derive_seed(s, n));
      const auto w = prnu::extract_residual(f, {});
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += w.plane.data[i];
      if (n == 1 || n == 10 || n == 50) corr.push_back(oracle::pearson(sum, oracle::as_doubles(model.k_field)));
    }
    if (corr[0] < corr[1] && corr[1] < corr[2]) ++monotone;
  }
  EXPECT_GE(monotone, 19);
}

TEST(Postprocess, RemovesConstants) {
  prnu::NoiseResidual r{Plane(17, 9, 5.0f), 1};
  EXPECT_LT(max_abs(prnu::postprocess_residual(r).plane), 1e-6);
}

TEST(Postprocess, RowAndColumnMeansVanish) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    Plane p = oracle::gaussian_plane(37 + seed, 23, 4.0, seed, 2.0 * seed);
    for (std::uint32_t y = 0; y < p.height; ++y) {
      for (std::uint32_t x = 0; x < p.width; ++x) p.at(x, y) += 0.3f * x - 0.7f * y;
    }
    const Plane q = prnu::postprocess_residual({p, 1}).plane;
    for (std::uint32_t y = 0; y < q.height; ++y) {
      double s = 0;
      for (std::uint32_t x = 0; x < q.width; ++x) s += q.at(x, y);
      EXPECT_NEAR(s / q.width, 0.0, 1e-4);
    }
    for (std::uint32_t x = 0; x < q.width; ++x) {
      double s = 0;
      for (std::uint32_t y = 0; y < q.height; ++y) s += q.at(x, y);
      EXPECT_NEAR(s / q.height, 0.0, 1e-4);
    }
  }
}

TEST(Postprocess, IsIdempotent) {
  const Plane once = prnu::zero_mean_rows_cols(oracle::gaussian_plane(40, 30, 3.0, 4, 1.0));
  const Plane twice = prnu::zero_mean_rows_cols(once);
  for (std::size_t i = 0; i < once.size(); ++i) EXPECT_NEAR(once.data[i], twice.data[i], 1e-6);
}

TEST(WienerDft, OffByDefaultAndShrinksWhenEnabled) {
  const Plane frame = oracle::gaussian_plane(64, 64, 10.0, 8, 128.0);
  DenoiseParams on;
  on.wiener_dft = true;
  const auto plain = prnu::extract_residual(frame, {});
  const auto filtered = prnu::extract_residual(frame, on);
  EXPECT_FALSE(plain.plane == filtered.plane);
  EXPECT_LT(oracle::sample_variance(oracle::as_doubles(filtered.plane)),
            oracle::sample_variance(oracle::as_doubles(plain.plane)));
  EXPECT_EQ(prnu::wiener_dft(Plane(8, 8, 2.0f), on), Plane(8, 8, 2.0f));
}

}  // namespace
