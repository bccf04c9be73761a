#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace prnu::wavelet {

/// Dense 2-D array of doubles used for transform coefficients.
struct Band {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;

  Band() = default;
  Band(std::size_t w, std::size_t h) : width(w), height(h), values(w * h, 0.0) {}

  double& at(std::size_t x, std::size_t y) { return values[y * width + x]; }
  double at(std::size_t x, std::size_t y) const { return values[y * width + x]; }
};

/// Detail sub-bands of one decomposition level, named by the filter applied
/// along rows then columns.
struct DetailLevel {
  Band hl;  // high along rows, low along columns
  Band lh;  // low along rows, high along columns
  Band hh;
  std::size_t source_width = 0;   // size of the approximation this level split
  std::size_t source_height = 0;
};

struct Decomposition {
  Band approximation;
  std::vector<DetailLevel> levels;  // levels[0] is the finest scale
};

/// Eight-tap Daubechies orthonormal scaling filter (four vanishing moments).
std::span<const double> daubechies8();

/// Maps any integer index onto [0, n) by half-sample symmetric reflection.
std::size_t reflect(std::ptrdiff_t i, std::size_t n) noexcept;

/// Single-level 1-D analysis with symmetric extension. Output length is
/// floor((n + taps - 1) / 2) for both bands.
void analyze_1d(std::span<const double> x, std::span<double> approx, std::span<double> detail);

/// Inverse of analyze_1d, reconstructing exactly `out.size()` samples.
void synthesize_1d(std::span<const double> approx, std::span<const double> detail,
                   std::span<double> out);

std::size_t coefficient_length(std::size_t n) noexcept;

Decomposition decompose(const Band& image, int levels);
Band reconstruct(const Decomposition& dec);

/// Local Wiener shrinkage in place: every coefficient is scaled by
/// v / (v + noise_var), where v is the smallest over `windows` of
/// max(0, local mean of c^2 - noise_var). Windows are odd side lengths and
/// the neighbourhood is mirrored at the borders.
void local_wiener(Band& band, double noise_var, std::span<const int> windows);

}  // namespace prnu::wavelet
