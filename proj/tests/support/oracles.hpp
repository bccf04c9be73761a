#pragma once

// Reference computations written independently of the library code they
// check. They favour obviousness over speed.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "prnu/plane.hpp"

namespace oracle {

struct Image {
  unsigned width = 0, height = 0, channels = 0, maxval = 0;
  std::vector<unsigned> samples;  // raw, before any rescale
};

// Netpbm reader that scans the header character by character.
inline Image read_pnm(const std::vector<std::uint8_t>& b) {
  std::size_t i = 0;
  auto skip = [&] {
    for (;;) {
      while (i < b.size() && std::isspace(b[i])) ++i;
      if (i < b.size() && b[i] == '#') {
        while (i < b.size() && b[i] != '\n') ++i;
      } else {
        return;
      }
    }
  };
  auto number = [&]() -> unsigned {
    skip();
    if (i >= b.size() || !std::isdigit(b[i])) throw std::runtime_error("number expected");
    unsigned v = 0;
    while (i < b.size() && std::isdigit(b[i])) v = v * 10 + (b[i++] - '0');
    return v;
  };
  if (b.size() < 2 || b[0] != 'P') throw std::runtime_error("magic");
  const char kind = static_cast<char>(b[1]);
  i = 2;
  Image img;
  img.channels = (kind == '3' || kind == '6') ? 3 : 1;
  img.width = number();
  img.height = number();
  img.maxval = number();
  const std::size_t n = std::size_t(img.width) * img.height * img.channels;
  if (kind == '2' || kind == '3') {
    for (std::size_t k = 0; k < n; ++k) img.samples.push_back(number());
  } else {
    ++i;  // single whitespace byte
    const bool wide = img.maxval > 255;
    for (std::size_t k = 0; k < n; ++k) {
      if (wide) {
        img.samples.push_back(b.at(i) * 256u + b.at(i + 1));
        i += 2;
      } else {
        img.samples.push_back(b.at(i++));
      }
    }
  }
  return img;
}

// Direct spatial-domain normalised circular correlation over every shift.
inline std::vector<double> direct_ncc(const prnu::Plane& a, const prnu::Plane& b) {
  const unsigned w = a.width, h = a.height;
  double ma = 0, mb = 0;
  for (unsigned k = 0; k < w * h; ++k) {
    ma += a.data[k];
    mb += b.data[k];
  }
  ma /= w * h;
  mb /= w * h;
  double na = 0, nb = 0;
  for (unsigned k = 0; k < w * h; ++k) {
    na += (a.data[k] - ma) * (a.data[k] - ma);
    nb += (b.data[k] - mb) * (b.data[k] - mb);
  }
  const double norm = std::sqrt(na * nb);
  std::vector<double> out(std::size_t(w) * h);
  for (unsigned sy = 0; sy < h; ++sy) {
    for (unsigned sx = 0; sx < w; ++sx) {
      double s = 0;
      for (unsigned y = 0; y < h; ++y) {
        for (unsigned x = 0; x < w; ++x) {
          s += (a.at(x, y) - ma) * (b.at((x + sx) % w, (y + sy) % h) - mb);
        }
      }
      out[std::size_t(sy) * w + sx] = s / norm;
    }
  }
  return out;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline std::vector<double> as_doubles(const prnu::Plane& p) {
  return {p.data.begin(), p.data.end()};
}

inline double pearson(const prnu::Plane& a, const prnu::Plane& b) {
  return pearson(as_doubles(a), as_doubles(b));
}

inline double sample_variance(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m += x;
  m /= v.size();
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

inline prnu::Plane gaussian_plane(unsigned w, unsigned h, double sigma, unsigned seed,
                                  double mean = 0.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(mean, sigma);
  prnu::Plane p(w, h);
  for (auto& v : p.data) v = static_cast<float>(n(rng));
  return p;
}

// Ordinary least-squares slope of y on x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle
