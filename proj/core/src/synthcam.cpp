#include "prnu/synthcam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "prnu/error.hpp"
#include "prnu/media_io.hpp"

namespace prnu::synth {
namespace {

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

std::size_t mirror(std::ptrdiff_t i, std::size_t n) {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < static_cast<std::ptrdiff_t>(n) ? m : period - 1 - m);
}

// Separable blur with mirrored borders.
std::vector<double> blur(const std::vector<double>& in, std::size_t w, std::size_t h, double sigma) {
  const auto k = gaussian_kernel(sigma);
  const auto r = static_cast<std::ptrdiff_t>(k.size() / 2);
  std::vector<double> tmp(in.size()), out(in.size());
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t j = -r; j <= r; ++j) {
        acc += k[j + r] * in[y * w + mirror(static_cast<std::ptrdiff_t>(x) + j, w)];
      }
      tmp[y * w + x] = acc;
    }
  }
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t j = -r; j <= r; ++j) {
        acc += k[j + r] * tmp[mirror(static_cast<std::ptrdiff_t>(y) + j, h) * w + x];
      }
      out[y * w + x] = acc;
    }
  }
  return out;
}

}  // namespace

double blur_sigma_for_cutoff(double cutoff) noexcept {
  return cutoff * std::sqrt(std::numbers::ln2 / (2.0 * std::numbers::pi * std::numbers::pi));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

SynthCameraModel gen_model(std::uint32_t width, std::uint32_t height, double sigma_k,
                           double sigma1, std::uint64_t seed) {
  if (!(sigma_k > 0.0 && sigma_k <= 0.1)) {
    fail(Errc::BadParameter, "sigma_k must lie in (0, 0.1], got " + std::to_string(sigma_k));
  }
  if (!(sigma1 >= 0.0) || !std::isfinite(sigma1)) fail(Errc::BadParameter, "sigma1 must be >= 0");
  if (width == 0 || height == 0) fail(Errc::BadParameter, "empty camera geometry");

  SynthCameraModel m;
  m.width = width;
  m.height = height;
  m.sigma_k = sigma_k;
  m.sigma1 = sigma1;
  m.seed = seed;
  m.k_field = Plane(width, height);

  std::mt19937_64 rng(derive_seed(seed, 0x4b));
  std::normal_distribution<double> n(0.0, sigma_k);
  std::vector<double> k(m.k_field.size());
  double mu = 0.0;
  for (double& v : k) {
    v = n(rng);
    mu += v;
  }
  mu /= static_cast<double>(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) m.k_field.data[i] = static_cast<float>(k[i] - mu);
  return m;
}

Plane render_scene(const SceneSpec& spec, std::uint32_t width, std::uint32_t height,
                   std::uint64_t seed) {
  if (width == 0 || height == 0) fail(Errc::BadParameter, "empty scene geometry");
  if (spec.kind == SceneSpec::Kind::Flat) {
    if (!(spec.luminance >= kSceneMin && spec.luminance <= kSceneMax)) {
      fail(Errc::BadParameter, "flat luminance must lie in [16, 240]");
    }
    return Plane(width, height, static_cast<float>(spec.luminance));
  }

  if (!(spec.contrast >= 0.0) || !std::isfinite(spec.contrast)) {
    fail(Errc::BadParameter, "contrast must be >= 0");
  }
  if (!(spec.cutoff > 0.0) || !std::isfinite(spec.cutoff)) {
    fail(Errc::BadParameter, "cutoff must be > 0");
  }
  if (spec.contrast == 0.0) return Plane(width, height, 128.0f);

  std::mt19937_64 rng(derive_seed(seed, 0x5c));
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> noise(static_cast<std::size_t>(width) * height);
  for (double& v : noise) v = n(rng);
  std::vector<double> smooth = blur(noise, width, height, blur_sigma_for_cutoff(spec.cutoff));

  double mu = 0.0;
  for (double v : smooth) mu += v;
  mu /= static_cast<double>(smooth.size());
  double var = 0.0;
  for (double v : smooth) var += (v - mu) * (v - mu);
  var /= static_cast<double>(smooth.size());
  const double scale = var > 0.0 ? spec.contrast / std::sqrt(var) : 0.0;

  Plane out(width, height);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = 128.0 + (smooth[i] - mu) * scale;
    out.data[i] = static_cast<float>(std::clamp(v, double(kSceneMin), double(kSceneMax)));
  }
  return out;
}

Plane render_frame(const SynthCameraModel& model, const Plane& scene, std::uint64_t frame_seed) {
  if (scene.width != model.width || scene.height != model.height) {
    fail(Errc::DimensionMismatch, "scene does not match camera geometry");
  }
  Plane out(scene.width, scene.height);
  std::mt19937_64 rng(derive_seed(frame_seed, 0x6d));
  std::normal_distribution<double> n(0.0, model.sigma1 > 0.0 ? model.sigma1 : 1.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double i0 = scene.data[i];
    const double eta = model.sigma1 > 0.0 ? n(rng) : 0.0;
    const double v = i0 + i0 * static_cast<double>(model.k_field.data[i]) + eta;
    out.data[i] = static_cast<float>(std::clamp(v, 0.0, 255.0));
  }
  return out;
}

CorrelationSurface brute_force_correlation(const Plane& a, const Plane& b) {
  require_same_shape(a, b, "brute_force_correlation");
  if (a.width > kBruteForceMaxSide || a.height > kBruteForceMaxSide) {
    fail(Errc::TooLarge, "brute-force correlation is limited to 64x64");
  }
  const std::size_t w = a.width, h = a.height, n = w * h;
  auto centre = [&](const Plane& p) {
    std::vector<double> v(p.data.begin(), p.data.end());
    double mu = 0.0;
    for (double x : v) mu += x;
    mu /= static_cast<double>(n);
    double e = 0.0;
    for (double& x : v) {
      x -= mu;
      e += x * x;
    }
    if (e <= 0.0) fail(Errc::ConstantInput, "zero-variance input");
    return std::make_pair(v, std::sqrt(e));
  };
  const auto [va, na] = centre(a);
  const auto [vb, nb] = centre(b);

  CorrelationSurface s;
  s.width = a.width;
  s.height = a.height;
  s.values.assign(n, 0.0);
  for (std::size_t sy = 0; sy < h; ++sy) {
    for (std::size_t sx = 0; sx < w; ++sx) {
      double acc = 0.0;
      for (std::size_t y = 0; y < h; ++y) {
        const std::size_t by = (y + sy) % h;
        for (std::size_t x = 0; x < w; ++x) {
          acc += va[y * w + x] * vb[by * w + (x + sx) % w];
        }
      }
      s.values[sy * w + sx] = acc / (na * nb);
    }
  }
  return s;
}

void write_y4m_corpus(const SynthCameraModel& model, const SceneSource& scenes,
                      std::uint64_t frame_count, std::ostream& out, const CorpusOptions& options) {
  if (model.k_field.size() != static_cast<std::size_t>(model.width) * model.height) {
    fail(Errc::BadParameter, "camera model has no PRNU field");
  }
  Y4mWriter writer(out, model.width, model.height, Colorspace::C420);
  for (std::uint64_t i = 0; i < frame_count; ++i) {
    const Plane scene = scenes(i);
    writer.write_frame(render_frame(model, scene, derive_seed(options.frame_seed_base, i)));
  }
  out.flush();
  if (!out) fail(Errc::IoFailure, "corpus write failed");
}

FingerprintEstimate truth_fingerprint(const SynthCameraModel& model) {
  FingerprintEstimate fp;
  fp.width = model.width;
  fp.height = model.height;
  fp.khat = model.k_field;
  fp.frames_consumed = 0;
  fp.denoise_ops = 0;
  fp.depth = 1;
  fp.mode = ExtractionMode::Conventional;
  return fp;
}

}  // namespace prnu::synth
