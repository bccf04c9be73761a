#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "prnu/denoise.hpp"
#include "prnu/fingerprint.hpp"
#include "prnu/plane.hpp"

namespace prnu {

struct Shift {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const Shift&, const Shift&) = default;
};

/// Circular correlation surface; value(dx, dy) is the correlation of a with b
/// displaced by (dx, dy). Stored row-major over [0, w) x [0, h).
struct CorrelationSurface {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<double> values;

  double at(std::uint32_t x, std::uint32_t y) const { return values[std::size_t(y) * width + x]; }
  /// Signed shift access with wrap-around.
  double at_shift(Shift s) const;
  /// Index (x, y) expressed as a signed shift in (-w/2, w/2].
  Shift to_shift(std::uint32_t x, std::uint32_t y) const;
};

/// Normalised circular cross-correlation of mean-removed planes via 2-D FFT.
/// Throws ConstantInput for zero-variance inputs, DimensionMismatch otherwise.
CorrelationSurface ncc_surface(const Plane& a, const Plane& b);

inline constexpr int kDefaultPceExclusion = 5;
inline constexpr double kPceCap = 1e12;
inline constexpr double kDefaultPceThreshold = 60.0;

struct PceScore {
  double pce = 0.0;
  Shift peak_shift;
  double peak_value = 0.0;
};

/// Peak-to-correlation energy at the largest |value|: signed peak^2 over the
/// mean energy outside the (2e+1)^2 neighbourhood of the peak, capped at 1e12.
PceScore pce(const CorrelationSurface& surface, int exclusion = kDefaultPceExclusion);

/// Same statistic with the peak pinned at `peak`.
PceScore pce_at(const CorrelationSurface& surface, Shift peak,
                int exclusion = kDefaultPceExclusion);

struct CorrelationResult {
  double pce = 0.0;
  Shift peak_shift;
  double ncc_peak = 0.0;
  bool decision = false;
};

enum class TemplateKind {
  /// khat (.) query: the expected PRNU term in a residual.
  Multiplicative,
  /// khat alone.
  Raw,
};

struct MatchOptions {
  double threshold = kDefaultPceThreshold;
  int exclusion = kDefaultPceExclusion;
  TemplateKind template_kind = TemplateKind::Multiplicative;
};

/// Strict comparison against the threshold.
inline bool pce_decision(double pce_value, double threshold) { return pce_value > threshold; }

Plane correlation_template(const FingerprintEstimate& fp, const LumaPlane& query,
                           TemplateKind kind);

/// Correlates a query residual against the fingerprint over all circular
/// shifts and scores the strongest peak.
CorrelationResult correlate_aligned(const NoiseResidual& residual, const FingerprintEstimate& fp,
                                    const LumaPlane& query, const MatchOptions& options = {});

// ---------------------------------------------------------------------------
// Block-wise matching

struct Tile {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::uint32_t w = 0;
  std::uint32_t h = 0;
  friend bool operator==(const Tile&, const Tile&) = default;
};

inline constexpr std::uint32_t kDefaultBlockSize = 500;

/// Disjoint tiles covering a frame in row-major order; edge tiles are smaller
/// and never empty.
struct BlockGrid {
  std::uint32_t block_size = kDefaultBlockSize;
  std::vector<Tile> tiles;

  /// Throws FrameSmallerThanBlock when either side is below block_size.
  static BlockGrid cover(std::uint32_t width, std::uint32_t height,
                         std::uint32_t block_size = kDefaultBlockSize);
};

struct TileResult {
  Tile tile;
  CorrelationResult result;
};

struct MatchReport {
  std::vector<TileResult> tiles;
  std::optional<bool> truth;  // same-camera label when known
  double elapsed_seconds = 0.0;

  std::vector<double> pce_values() const;
  std::vector<bool> decisions() const;
  std::size_t matched_tiles() const;
  /// Frame-level verdict: more than half of the tiles match.
  bool majority_decision() const;

  /// One row per tile: x,y,w,h,pce,ncc_peak,dx,dy,decision.
  void write_csv(std::ostream& out) const;
};

/// Aligned per-tile correlation (peak pinned at zero shift).
MatchReport blockwise_match(const FingerprintEstimate& fp, const NoiseResidual& residual,
                            const LumaPlane& query, const BlockGrid& grid,
                            const MatchOptions& options = {});

}  // namespace prnu
