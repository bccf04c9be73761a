#include "prnu/denoise.hpp"

#include <cmath>
#include <string>

#include "prnu/error.hpp"
#include "prnu/fft.hpp"
#include "prnu/wavelet.hpp"

namespace prnu {

void DenoiseParams::validate() const {
  if (!(sigma0_sq > 0.0) || !std::isfinite(sigma0_sq)) {
    fail(Errc::BadParameter, "sigma0_sq must be positive");
  }
  if (wavelet_levels < 1 || wavelet_levels > 16) {
    fail(Errc::BadParameter, "wavelet_levels must be in [1, 16]");
  }
  if (window_sizes.empty()) fail(Errc::BadParameter, "no local-variance windows");
  for (int k : window_sizes) {
    if (k < 3 || k % 2 == 0) {
      fail(Errc::BadParameter, "window size " + std::to_string(k) + " must be odd and >= 3");
    }
  }
}

LumaPlane wavelet_denoise(const LumaPlane& plane, const DenoiseParams& params) {
  params.validate();
  const std::uint32_t min_side = 1u << params.wavelet_levels;
  if (plane.width < min_side || plane.height < min_side) {
    fail(Errc::PlaneTooSmall, std::to_string(plane.width) + "x" + std::to_string(plane.height) +
                                  " is below " + std::to_string(min_side) + " for " +
                                  std::to_string(params.wavelet_levels) + " levels");
  }

  wavelet::Band image(plane.width, plane.height);
  std::copy(plane.data.begin(), plane.data.end(), image.values.begin());

  wavelet::Decomposition dec = wavelet::decompose(image, params.wavelet_levels);
  for (auto& level : dec.levels) {
    wavelet::local_wiener(level.hl, params.sigma0_sq, params.window_sizes);
    wavelet::local_wiener(level.lh, params.sigma0_sq, params.window_sizes);
    wavelet::local_wiener(level.hh, params.sigma0_sq, params.window_sizes);
  }
  const wavelet::Band out = wavelet::reconstruct(dec);

  LumaPlane result(plane.width, plane.height);
  for (std::size_t i = 0; i < result.size(); ++i) {
    result.data[i] = static_cast<float>(out.values[i]);
  }
  return result;
}

NoiseResidual extract_residual(const LumaPlane& plane, const DenoiseParams& params,
                               std::uint32_t source_frames) {
  const LumaPlane denoised = wavelet_denoise(plane, params);
  NoiseResidual r;
  r.source_frames = source_frames;
  r.plane = Plane(plane.width, plane.height);
  for (std::size_t i = 0; i < plane.size(); ++i) {
    r.plane.data[i] = plane.data[i] - denoised.data[i];
  }
  if (params.wiener_dft) r.plane = wiener_dft(r.plane, params);
  return r;
}

Plane zero_mean_rows_cols(Plane p) {
  const std::uint32_t w = p.width, h = p.height;
  if (w == 0 || h == 0) return p;
  for (std::uint32_t y = 0; y < h; ++y) {
    auto row = p.row(y);
    double s = 0.0;
    for (float v : row) s += v;
    const double m = s / w;
    for (float& v : row) v = static_cast<float>(v - m);
  }
  std::vector<double> col(w, 0.0);
  for (std::uint32_t y = 0; y < h; ++y) {
    auto row = p.row(y);
    for (std::uint32_t x = 0; x < w; ++x) col[x] += row[x];
  }
  for (double& c : col) c /= h;
  for (std::uint32_t y = 0; y < h; ++y) {
    auto row = p.row(y);
    for (std::uint32_t x = 0; x < w; ++x) row[x] = static_cast<float>(row[x] - col[x]);
  }
  return p;
}

NoiseResidual postprocess_residual(NoiseResidual residual) {
  residual.plane = zero_mean_rows_cols(std::move(residual.plane));
  return residual;
}

Plane wiener_dft(const Plane& residual, const DenoiseParams& params) {
  const std::size_t w = residual.width, h = residual.height;
  const std::size_t n = w * h;
  if (n == 0) return residual;
  std::vector<double> values(residual.data.begin(), residual.data.end());

  double mu = 0.0;
  for (double v : values) mu += v;
  mu /= static_cast<double>(n);
  double noise_var = 0.0;
  for (double v : values) noise_var += (v - mu) * (v - mu);
  noise_var /= static_cast<double>(n);
  if (noise_var <= 0.0) return residual;

  fft::Spectrum spec = fft::forward(values, w, h);
  const std::size_t bw = spec.bins_per_row();
  wavelet::Band magnitude(bw, h);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < spec.bins.size(); ++i) {
    magnitude.values[i] = std::abs(spec.bins[i]) * norm;
  }
  wavelet::Band shrunk = magnitude;
  wavelet::local_wiener(shrunk, noise_var, params.window_sizes);
  for (std::size_t i = 0; i < spec.bins.size(); ++i) {
    const double m = magnitude.values[i];
    spec.bins[i] *= m > 0.0 ? shrunk.values[i] / m : 0.0;
  }
  const std::vector<double> back = fft::inverse(spec);
  Plane out(residual.width, residual.height);
  for (std::size_t i = 0; i < n; ++i) out.data[i] = static_cast<float>(back[i] / n);
  return out;
}

}  // namespace prnu
