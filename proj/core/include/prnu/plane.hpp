#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace prnu {

/// Row-major single-channel raster of 32-bit floats.
///
/// Used for luma planes, noise residuals and fingerprint fields alike; the
/// domain types below wrap it where extra provenance is needed.
struct Plane {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<float> data;

  Plane() = default;
  Plane(std::uint32_t w, std::uint32_t h, float fill = 0.0f)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  std::size_t size() const noexcept { return data.size(); }
  bool empty() const noexcept { return data.empty(); }

  float& at(std::uint32_t x, std::uint32_t y) noexcept {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  float at(std::uint32_t x, std::uint32_t y) const noexcept {
    return data[static_cast<std::size_t>(y) * width + x];
  }

  std::span<float> row(std::uint32_t y) noexcept {
    return {data.data() + static_cast<std::size_t>(y) * width, width};
  }
  std::span<const float> row(std::uint32_t y) const noexcept {
    return {data.data() + static_cast<std::size_t>(y) * width, width};
  }

  bool same_shape(const Plane& other) const noexcept {
    return width == other.width && height == other.height;
  }

  friend bool operator==(const Plane&, const Plane&) = default;
};

/// Working representation for denoising and correlation.
using LumaPlane = Plane;

/// Throws DimensionMismatch naming `what` when the shapes differ.
void require_same_shape(const Plane& a, const Plane& b, const char* what);

/// Extracts the (x, y, w, h) window of `src` as a new plane.
Plane crop(const Plane& src, std::uint32_t x, std::uint32_t y, std::uint32_t w,
           std::uint32_t h);

/// Pearson correlation of two equally sized planes, accumulated in double.
double correlation_coefficient(const Plane& a, const Plane& b);

double mean(const Plane& p);
double variance(const Plane& p);

}  // namespace prnu
