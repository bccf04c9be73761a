#include "prnu/correlate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "prnu/error.hpp"
#include "prnu/fft.hpp"

namespace prnu {
namespace {

// Mean-removed copy scaled to unit L2 norm.
std::vector<double> normalized(const Plane& p, const char* which) {
  std::vector<double> v(p.data.begin(), p.data.end());
  double mu = 0.0;
  for (double x : v) mu += x;
  mu /= static_cast<double>(v.size());
  double energy = 0.0;
  for (double& x : v) {
    x -= mu;
    energy += x * x;
  }
  // Relative test: float rounding leaves ~1e-7 * |mean| residue on constants.
  if (!(energy > 1e-18 * static_cast<double>(v.size()) * std::max(1.0, mu * mu))) {
    fail(Errc::ConstantInput, std::string(which) + " has zero variance");
  }
  const double inv = 1.0 / std::sqrt(energy);
  for (double& x : v) x *= inv;
  return v;
}

std::uint32_t circular_distance(std::uint32_t a, std::uint32_t b, std::uint32_t n) {
  const std::uint32_t d = a > b ? a - b : b - a;
  return std::min(d, n - d);
}

}  // namespace

double CorrelationSurface::at_shift(Shift s) const {
  const auto wrap = [](int v, std::uint32_t n) {
    const int m = v % static_cast<int>(n);
    return static_cast<std::uint32_t>(m < 0 ? m + static_cast<int>(n) : m);
  };
  return at(wrap(s.dx, width), wrap(s.dy, height));
}

Shift CorrelationSurface::to_shift(std::uint32_t x, std::uint32_t y) const {
  const auto sign = [](std::uint32_t v, std::uint32_t n) {
    return v > n / 2 ? static_cast<int>(v) - static_cast<int>(n) : static_cast<int>(v);
  };
  return {sign(x, width), sign(y, height)};
}

CorrelationSurface ncc_surface(const Plane& a, const Plane& b) {
  require_same_shape(a, b, "ncc_surface");
  if (a.empty()) fail(Errc::DimensionMismatch, "ncc_surface of empty planes");
  const auto na = normalized(a, "first input");
  const auto nb = normalized(b, "second input");
  CorrelationSurface s;
  s.width = a.width;
  s.height = a.height;
  s.values = fft::cross_correlate(na, nb, a.width, a.height);
  return s;
}

PceScore pce_at(const CorrelationSurface& surface, Shift peak, int exclusion) {
  if (surface.values.empty()) fail(Errc::DegenerateSurface, "empty surface");
  const auto [mn, mx] = std::minmax_element(surface.values.begin(), surface.values.end());
  if (*mn == *mx) fail(Errc::DegenerateSurface, "surface is constant");

  const double peak_value = surface.at_shift(peak);
  const std::uint32_t px = static_cast<std::uint32_t>(
      ((peak.dx % static_cast<int>(surface.width)) + static_cast<int>(surface.width)) %
      static_cast<int>(surface.width));
  const std::uint32_t py = static_cast<std::uint32_t>(
      ((peak.dy % static_cast<int>(surface.height)) + static_cast<int>(surface.height)) %
      static_cast<int>(surface.height));
  const auto ex = static_cast<std::uint32_t>(std::max(0, exclusion));

  double energy = 0.0;
  std::size_t count = 0;
  for (std::uint32_t y = 0; y < surface.height; ++y) {
    const bool near_y = circular_distance(y, py, surface.height) <= ex;
    for (std::uint32_t x = 0; x < surface.width; ++x) {
      if (near_y && circular_distance(x, px, surface.width) <= ex) continue;
      const double v = surface.at(x, y);
      energy += v * v;
      ++count;
    }
  }

  PceScore score;
  score.peak_shift = peak;
  score.peak_value = peak_value;
  const double sign = peak_value < 0.0 ? -1.0 : 1.0;
  const double background = count > 0 ? energy / static_cast<double>(count) : 0.0;
  const double peak_energy = peak_value * peak_value;
  if (background <= 0.0 || peak_energy / background > kPceCap) {
    score.pce = peak_energy > 0.0 ? sign * kPceCap : 0.0;
  } else {
    score.pce = sign * peak_energy / background;
  }
  return score;
}

PceScore pce(const CorrelationSurface& surface, int exclusion) {
  if (surface.values.empty()) fail(Errc::DegenerateSurface, "empty surface");
  std::size_t best = 0;
  for (std::size_t i = 1; i < surface.values.size(); ++i) {
    if (std::abs(surface.values[i]) > std::abs(surface.values[best])) best = i;
  }
  const auto x = static_cast<std::uint32_t>(best % surface.width);
  const auto y = static_cast<std::uint32_t>(best / surface.width);
  return pce_at(surface, surface.to_shift(x, y), exclusion);
}

Plane correlation_template(const FingerprintEstimate& fp, const LumaPlane& query,
                           TemplateKind kind) {
  require_same_shape(fp.khat, query, "fingerprint vs query");
  if (kind == TemplateKind::Raw) return fp.khat;
  Plane t(query.width, query.height);
  for (std::size_t i = 0; i < t.size(); ++i) t.data[i] = fp.khat.data[i] * query.data[i];
  return t;
}

CorrelationResult correlate_aligned(const NoiseResidual& residual, const FingerprintEstimate& fp,
                                    const LumaPlane& query, const MatchOptions& options) {
  require_same_shape(residual.plane, query, "residual vs query");
  const Plane tmpl = correlation_template(fp, query, options.template_kind);
  const CorrelationSurface surface = ncc_surface(residual.plane, tmpl);
  const PceScore score = pce(surface, options.exclusion);
  CorrelationResult r;
  r.pce = score.pce;
  r.peak_shift = score.peak_shift;
  r.ncc_peak = score.peak_value;
  r.decision = pce_decision(r.pce, options.threshold);
  return r;
}

BlockGrid BlockGrid::cover(std::uint32_t width, std::uint32_t height, std::uint32_t block_size) {
  if (block_size == 0) fail(Errc::BadParameter, "block size must be positive");
  if (width < block_size || height < block_size) {
    fail(Errc::FrameSmallerThanBlock, std::to_string(width) + "x" + std::to_string(height) +
                                          " frame is smaller than block " +
                                          std::to_string(block_size));
  }
  BlockGrid grid;
  grid.block_size = block_size;
  for (std::uint32_t y = 0; y < height; y += block_size) {
    for (std::uint32_t x = 0; x < width; x += block_size) {
      grid.tiles.push_back({x, y, std::min(block_size, width - x), std::min(block_size, height - y)});
    }
  }
  return grid;
}

std::vector<double> MatchReport::pce_values() const {
  std::vector<double> v;
  v.reserve(tiles.size());
  for (const auto& t : tiles) v.push_back(t.result.pce);
  return v;
}

std::vector<bool> MatchReport::decisions() const {
  std::vector<bool> v;
  v.reserve(tiles.size());
  for (const auto& t : tiles) v.push_back(t.result.decision);
  return v;
}

std::size_t MatchReport::matched_tiles() const {
  return static_cast<std::size_t>(
      std::count_if(tiles.begin(), tiles.end(), [](const TileResult& t) { return t.result.decision; }));
}

bool MatchReport::majority_decision() const { return 2 * matched_tiles() > tiles.size(); }

void MatchReport::write_csv(std::ostream& out) const {
  out << "x,y,w,h,pce,ncc_peak,dx,dy,decision\n";
  char buf[256];
  for (const auto& t : tiles) {
    std::snprintf(buf, sizeof buf, "%u,%u,%u,%u,%.4f,%.4f,%d,%d,%d\n", t.tile.x, t.tile.y,
                  t.tile.w, t.tile.h, t.result.pce, t.result.ncc_peak, t.result.peak_shift.dx,
                  t.result.peak_shift.dy, t.result.decision ? 1 : 0);
    out << buf;
  }
}

MatchReport blockwise_match(const FingerprintEstimate& fp, const NoiseResidual& residual,
                            const LumaPlane& query, const BlockGrid& grid,
                            const MatchOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  require_same_shape(residual.plane, query, "residual vs query");
  const Plane tmpl = correlation_template(fp, query, options.template_kind);
  if (query.width < grid.block_size || query.height < grid.block_size) {
    fail(Errc::FrameSmallerThanBlock, "query is smaller than one block");
  }

  MatchReport report;
  report.tiles.reserve(grid.tiles.size());
  for (const Tile& tile : grid.tiles) {
    if (tile.x + tile.w > query.width || tile.y + tile.h > query.height) {
      fail(Errc::DimensionMismatch, "tile lies outside the frame");
    }
    TileResult tr;
    tr.tile = tile;
    try {
      const Plane r = crop(residual.plane, tile.x, tile.y, tile.w, tile.h);
      const Plane t = crop(tmpl, tile.x, tile.y, tile.w, tile.h);
      const PceScore score = pce_at(ncc_surface(r, t), Shift{0, 0}, options.exclusion);
      tr.result.pce = score.pce;
      tr.result.ncc_peak = score.peak_value;
    } catch (const Error& e) {
      // A flat tile (e.g. a saturated region) carries no PRNU evidence.
      if (e.code() != Errc::ConstantInput && e.code() != Errc::DegenerateSurface) throw;
      tr.result.pce = 0.0;
      tr.result.ncc_peak = 0.0;
    }
    tr.result.decision = pce_decision(tr.result.pce, options.threshold);
    report.tiles.push_back(tr);
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace prnu
