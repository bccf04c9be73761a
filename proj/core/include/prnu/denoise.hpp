#pragma once

#include <cstdint>
#include <vector>

#include "prnu/plane.hpp"

namespace prnu {

/// Parameters of the wavelet denoising filter.
///
/// sigma0_sq is the assumed variance of the noise to remove, on the [0, 255]
/// intensity scale. Window sizes are the odd side lengths over which local
/// coefficient variance is estimated; the smallest estimate wins.
struct DenoiseParams {
  double sigma0_sq = 9.0;
  int wavelet_levels = 4;
  std::vector<int> window_sizes{3, 5, 7, 9};
  /// Extra Wiener shrinkage of the residual spectrum. Off by default.
  bool wiener_dft = false;

  /// Throws BadParameter when an invariant is violated.
  void validate() const;
};

/// W = I - F(I), with the number of source frames averaged into I.
struct NoiseResidual {
  Plane plane;
  std::uint32_t source_frames = 1;

  std::uint32_t width() const noexcept { return plane.width; }
  std::uint32_t height() const noexcept { return plane.height; }
};

/// F(I): four-level eight-tap Daubechies decomposition with local Wiener
/// shrinkage of every detail coefficient; the approximation passes through.
/// Throws PlaneTooSmall when either side is below 2^levels.
LumaPlane wavelet_denoise(const LumaPlane& plane, const DenoiseParams& params);

NoiseResidual extract_residual(const LumaPlane& plane, const DenoiseParams& params,
                               std::uint32_t source_frames = 1);

/// Removes row means, then column means (one pass each).
NoiseResidual postprocess_residual(NoiseResidual residual);
Plane zero_mean_rows_cols(Plane plane);

/// Wiener filtering of the residual in the DFT domain: spectral magnitudes are
/// shrunk with the same local-variance rule as the wavelet filter, using the
/// residual's own variance as the noise level.
Plane wiener_dft(const Plane& residual, const DenoiseParams& params);

}  // namespace prnu
