#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "prnu/error.hpp"
#include "prnu/fingerprint.hpp"
#include "prnu/synthcam.hpp"

namespace {

namespace synth = prnu::synth;
using prnu::Plane;

template <typename F>
prnu::Errc code_of(F&& f) {
  try {
    f();
  } catch (const prnu::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no prnu::Error thrown";
  return prnu::Errc::IoFailure;
}

synth::SynthCameraModel manual_model(std::uint32_t w, std::uint32_t h, float k, double sigma1) {
  synth::SynthCameraModel m;
  m.width = w;
  m.height = h;
  m.k_field = Plane(w, h, k);
  m.sigma1 = sigma1;
  return m;
}

TEST(GenModel, ParameterChecks) {
  EXPECT_EQ(code_of([] { synth::gen_model(8, 8, 0.0, 1.0, 1); }), prnu::Errc::BadParameter);
  EXPECT_EQ(code_of([] { synth::gen_model(8, 8, 0.2, 1.0, 1); }), prnu::Errc::BadParameter);
  EXPECT_EQ(code_of([] { synth::gen_model(8, 8, 0.02, -1.0, 1); }), prnu::Errc::BadParameter);
  EXPECT_NO_THROW(synth::gen_model(8, 8, 0.1, 0.0, 1));
}

TEST(GenModel, SeedDeterminesTheField) {
  EXPECT_EQ(synth::gen_model(32, 16, 0.02, 3, 5).k_field, synth::gen_model(32, 16, 0.02, 3, 5).k_field);
  EXPECT_NE(synth::gen_model(32, 16, 0.02, 3, 5).k_field, synth::gen_model(32, 16, 0.02, 3, 6).k_field);
}

TEST(GenModel, FieldStatistics) {
  const auto m = synth::gen_model(256, 256, 0.02, 3, 9);
  const auto v = oracle::as_doubles(m.k_field);
  EXPECT_NEAR(std::sqrt(oracle::sample_variance(v)), 0.02, 0.05 * 0.02);
  EXPECT_NEAR(prnu::mean(m.k_field), 0.0, 1e-6);
}

TEST(RenderScene, FlatAndZeroContrast) {
  EXPECT_EQ(synth::render_scene(synth::SceneSpec::flat(128), 8, 4, 1), Plane(8, 4, 128.0f));
  EXPECT_EQ(synth::render_scene(synth::SceneSpec::textured(8, 0), 8, 4, 1), Plane(8, 4, 128.0f));
  EXPECT_EQ(code_of([] { synth::render_scene(synth::SceneSpec::flat(250), 8, 4, 1); }),
            prnu::Errc::BadParameter);
}

TEST(RenderScene, TexturedScenesStayInRangeAndAreSeeded) {
  const auto spec = synth::SceneSpec::textured(8, 60);
  const Plane a = synth::render_scene(spec, 128, 96, 3);
  for (float v : a.data) {
    EXPECT_GE(v, synth::kSceneMin);
    EXPECT_LE(v, synth::kSceneMax);
  }
  EXPECT_EQ(a, synth::render_scene(spec, 128, 96, 3));
  EXPECT_NE(a, synth::render_scene(spec, 128, 96, 4));
  EXPECT_GT(std::sqrt(prnu::variance(a)), 40.0);
}

TEST(RenderScene, CutoffMapsToHalfAmplitude) {
  const double s = synth::blur_sigma_for_cutoff(8.0);
  const double f = 1.0 / 8.0;
  EXPECT_NEAR(std::exp(-2.0 * std::numbers::pi * std::numbers::pi * s * s * f * f), 0.5, 1e-12);
}

TEST(RenderScene, TextureLeaksThroughTheDenoiser) {
  const Plane flat = synth::render_scene(synth::SceneSpec::flat(128), 128, 128, 0);
  const Plane tex = synth::render_scene(synth::SceneSpec::textured(8, 60), 128, 128, 0);
  auto energy = [](const Plane& p) {
    double e = 0;
    for (float v : prnu::extract_residual(p, {}).plane.data) e += double(v) * v;
    return e;
  };
  EXPECT_GT(energy(tex), energy(flat));
  EXPECT_GT(energy(tex), 1.0);
}

TEST(RenderFrame, NoiselessIdentity) {
  const auto m = manual_model(16, 8, 0.0f, 0.0);
  const Plane scene = synth::render_scene(synth::SceneSpec::textured(4, 30), 16, 8, 2);
  EXPECT_EQ(synth::render_frame(m, scene, 7), scene);
}

TEST(RenderFrame, MultiplicativeTerm) {
  const auto m = manual_model(5, 5, 0.01f, 0.0);
  const Plane f = synth::render_frame(m, Plane(5, 5, 100.0f), 1);
  for (float v : f.data) EXPECT_NEAR(v, 101.0f, 1e-4);
}

TEST(RenderFrame, ClampsToTheSampleRange) {
  const auto m = manual_model(4, 4, 0.0f, 500.0);
  for (float v : synth::render_frame(m, Plane(4, 4, 128.0f), 3).data) {
    EXPECT_GE(v, 0.0f);
    EXPECT_LE(v, 255.0f);
  }
}

TEST(RenderFrame, SampleMeanConverges) {
  const auto m = synth::gen_model(32, 32, 0.02, 3.0, 4);
  const Plane scene = synth::render_scene(synth::SceneSpec::flat(120), 32, 32, 0);
  std::vector<double> sum(32 * 32, 0.0);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Plane f = synth::render_frame(m, scene, synth::derive_seed(4, i));
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += f.data[k];
  }
  const double bound = 3.0 * 3.0 / std::sqrt(500.0);
  int inside = 0;
  for (std::size_t k = 0; k < sum.size(); ++k) {
    const double truth = 120.0 + 120.0 * m.k_field.data[k];
    if (std::abs(sum[k] / 500 - truth) <= bound) ++inside;
  }
  EXPECT_GE(inside, static_cast<int>(0.99 * sum.size()));
}

TEST(BruteForce, SelfAndAntiCorrelation) {
  const Plane a = oracle::gaussian_plane(12, 10, 1.0, 1);
  const auto s = synth::brute_force_correlation(a, a);
  EXPECT_NEAR(s.at(0, 0), 1.0, 1e-9);

  Plane board(8, 8), inverse(8, 8);
  for (std::uint32_t y = 0; y < 8; ++y) {
    for (std::uint32_t x = 0; x < 8; ++x) {
      board.at(x, y) = ((x + y) % 2) ? 1.0f : 0.0f;
      inverse.at(x, y) = 1.0f - board.at(x, y);
    }
  }
  const auto c = synth::brute_force_correlation(board, inverse);
  EXPECT_NEAR(c.at(0, 0), -1.0, 1e-9);
  EXPECT_NEAR(*std::min_element(c.values.begin(), c.values.end()), -1.0, 1e-9);
}

TEST(BruteForce, AgreesWithFftPathAndIndependentOracle) {
  const Plane a = oracle::gaussian_plane(20, 14, 1.0, 5, 3.0);
  const Plane b = oracle::gaussian_plane(20, 14, 2.0, 6);
  const auto bf = synth::brute_force_correlation(a, b);
  const auto fft = prnu::ncc_surface(a, b);
  const auto direct = oracle::direct_ncc(a, b);
  for (std::size_t i = 0; i < bf.values.size(); ++i) {
    EXPECT_NEAR(bf.values[i], fft.values[i], 1e-4);
    EXPECT_NEAR(bf.values[i], direct[i], 1e-9);
  }
}

TEST(BruteForce, RefusesLargeInputs) {
  EXPECT_EQ(code_of([] { synth::brute_force_correlation(Plane(65, 8, 1), Plane(65, 8, 1)); }),
            prnu::Errc::TooLarge);
}

TEST(Corpus, RoundTripThroughY4m) {
  const auto m = synth::gen_model(32, 24, 0.02, 3.0, 8);
  const Plane scene = synth::render_scene(synth::SceneSpec::textured(8, 40), 32, 24, 1);
  std::ostringstream out;
  synth::write_y4m_corpus(m, [&](std::uint64_t) { return scene; }, 10, out, {77});
  auto stream = prnu::open_y4m(std::make_unique<std::istringstream>(out.str()));
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto f = stream->next();
    ASSERT_TRUE(f);
    const Plane expect = synth::render_frame(m, scene, synth::derive_seed(77, i));
    for (std::size_t k = 0; k < expect.size(); ++k) EXPECT_NEAR(f->data[k], expect.data[k], 0.5f);
  }
  EXPECT_FALSE(stream->next());
}

TEST(Corpus, FixedSeedsGiveIdenticalBytes) {
  auto make = [] {
    const auto m = synth::gen_model(16, 16, 0.02, 3.0, 3);
    std::ostringstream out;
    synth::write_y4m_corpus(
        m, [](std::uint64_t i) { return synth::render_scene(synth::SceneSpec::textured(8, 60), 16, 16, i); },
        5, out, {9});
    return out.str();
  };
  EXPECT_EQ(make(), make());
}

TEST(Corpus, LongCorpusThroughSda30) {
  const auto m = synth::gen_model(16, 16, 0.02, 3.0, 2);
  const Plane scene = synth::render_scene(synth::SceneSpec::flat(128), 16, 16, 0);
  auto text = std::make_unique<std::stringstream>();
  synth::write_y4m_corpus(m, [&](std::uint64_t) { return scene; }, 1200, *text);
  auto stream = prnu::open_y4m(std::move(text));
  prnu::ExtractionStats stats;
  const auto fp = prnu::extract_fingerprint(*stream, prnu::ExtractionSpec::sda(30), {}, &stats);
  EXPECT_EQ(stats.denoise_ops, 40u);
  EXPECT_EQ(fp.frames_consumed, 1200u);
}

TEST(Truth, SerializesAsAFingerprint) {
  const auto m = synth::gen_model(8, 8, 0.02, 3.0, 1);
  std::stringstream buf;
  prnu::save_fingerprint(synth::truth_fingerprint(m), buf);
  EXPECT_EQ(prnu::load_fingerprint(buf).khat, m.k_field);
}

TEST(Oracle, SameAndDifferentCameraSeparate) {
  const auto cam = synth::gen_model(128, 128, 0.02, 3.0, 31);
  const Plane scene = synth::render_scene(synth::SceneSpec::flat(128), 128, 128, 0);
  std::vector<Plane> training;
  for (std::uint64_t i = 0; i < 100; ++i) training.push_back(synth::render_frame(cam, scene, synth::derive_seed(31, i)));
  prnu::PlaneListStream stream(training);
  const auto fp = prnu::extract_fingerprint(stream, prnu::ExtractionSpec::conventional());

  int h1 = 0, h0 = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto other = synth::gen_model(128, 128, 0.02, 3.0, 5000 + t);
    const Plane same = synth::render_frame(cam, scene, synth::derive_seed(900, t));
    const Plane diff = synth::render_frame(other, scene, synth::derive_seed(901, t));
    const auto rs = prnu::correlate_aligned(prnu::postprocess_residual(prnu::extract_residual(same, {})), fp, same);
    const auto rd = prnu::correlate_aligned(prnu::postprocess_residual(prnu::extract_residual(diff, {})), fp, diff);
    if (rs.pce > 60) ++h1;
    if (rd.pce < 60) ++h0;
  }
  EXPECT_GE(h1, 95);
  EXPECT_GE(h0, 95);
}

// The estimator's variance falls like 1/m. The denoiser also removes a fixed
// share of the PRNU term itself, a bias that does not shrink with m, so the
// variance is measured from two independent runs: var(khat_a - khat_b) / 2.
TEST(Oracle, EstimatorVarianceFallsAsOneOverFrames) {
  const auto cam = synth::gen_model(128, 128, 0.02, 3.0, 41);
  const Plane scene = synth::render_scene(synth::SceneSpec::flat(128), 128, 128, 0);
  const auto k = oracle::as_doubles(cam.k_field);
  std::vector<double> log_m, log_var, mse;
  prnu::MleAccumulator acc_a(128, 128), acc_b(128, 128);
  for (std::uint64_t i = 1; i <= 160; ++i) {
    const Plane fa = synth::render_frame(cam, scene, synth::derive_seed(41, i));
    const Plane fb = synth::render_frame(cam, scene, synth::derive_seed(42, i));
    prnu::accumulate_mle(acc_a, prnu::extract_residual(fa, {}), fa);
    prnu::accumulate_mle(acc_b, prnu::extract_residual(fb, {}), fb);
    if (i == 10 || i == 40 || i == 160) {
      const auto ka = oracle::as_doubles(prnu::finalize_mle(acc_a).khat);
      const auto kb = oracle::as_doubles(prnu::finalize_mle(acc_b).khat);
      std::vector<double> diff(k.size());
      double e = 0;
      for (std::size_t p = 0; p < k.size(); ++p) {
        diff[p] = ka[p] - kb[p];
        e += (ka[p] - k[p]) * (ka[p] - k[p]);
      }
      log_m.push_back(std::log(double(i)));
      log_var.push_back(std::log(oracle::sample_variance(diff) / 2));
      mse.push_back(e / k.size());
    }
  }
  const double slope = oracle::ls_slope(log_m, log_var);
  std::cout << "log-log slope " << slope << ", mse vs K " << mse[0] << " " << mse[1] << " "
            << mse[2] << "\n";
  EXPECT_GE(slope, -1.2);
  EXPECT_LE(slope, -0.8);
  EXPECT_GT(mse[0], mse[1]);
  EXPECT_GT(mse[1], mse[2]);
}

}  // namespace
