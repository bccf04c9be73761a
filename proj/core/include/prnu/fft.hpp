#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace prnu::fft {

/// Half spectrum of a real row-major image: height rows of (width / 2 + 1)
/// complex bins.
struct Spectrum {
  std::size_t width = 0;   // real-domain width
  std::size_t height = 0;
  std::vector<std::complex<double>> bins;

  std::size_t bins_per_row() const noexcept { return width / 2 + 1; }
};

Spectrum forward(std::span<const double> image, std::size_t width, std::size_t height);

/// Unnormalised inverse: forward followed by inverse scales by width * height.
std::vector<double> inverse(const Spectrum& spectrum);

/// Circular cross-correlation r(s) = sum_x a(x) * b(x + s), indexed
/// row-major with s in [0, w) x [0, h).
std::vector<double> cross_correlate(std::span<const double> a, std::span<const double> b,
                                    std::size_t width, std::size_t height);

}  // namespace prnu::fft
