#include "prnu/plane.hpp"

#include <cmath>
#include <string>

#include "prnu/error.hpp"

namespace prnu {

void require_same_shape(const Plane& a, const Plane& b, const char* what) {
  if (!a.same_shape(b)) {
    fail(Errc::DimensionMismatch,
         std::string(what) + ": " + std::to_string(a.width) + "x" +
             std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
             std::to_string(b.height));
  }
}

Plane crop(const Plane& src, std::uint32_t x, std::uint32_t y, std::uint32_t w,
           std::uint32_t h) {
  if (x + w > src.width || y + h > src.height) {
    fail(Errc::DimensionMismatch, "crop window exceeds plane");
  }
  Plane out(w, h);
  for (std::uint32_t r = 0; r < h; ++r) {
    auto in = src.row(y + r).subspan(x, w);
    std::copy(in.begin(), in.end(), out.row(r).begin());
  }
  return out;
}

double mean(const Plane& p) {
  if (p.empty()) return 0.0;
  double s = 0.0;
  for (float v : p.data) s += v;
  return s / static_cast<double>(p.size());
}

double variance(const Plane& p) {
  if (p.size() < 2) return 0.0;
  const double mu = mean(p);
  double s = 0.0;
  for (float v : p.data) s += (v - mu) * (v - mu);
  return s / static_cast<double>(p.size() - 1);
}

double correlation_coefficient(const Plane& a, const Plane& b) {
  require_same_shape(a, b, "correlation_coefficient");
  const double ma = mean(a);
  const double mb = mean(b);
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a.data[i] - ma;
    const double db = b.data[i] - mb;
    ab += da * db;
    aa += da * da;
    bb += db * db;
  }
  if (aa <= 0.0 || bb <= 0.0) return 0.0;
  return ab / std::sqrt(aa * bb);
}

}  // namespace prnu
