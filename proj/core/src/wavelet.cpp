#include "prnu/wavelet.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace prnu::wavelet {
namespace {

constexpr std::array<double, 8> kScaling = {
    0.23037781330885523,  0.7148465705525415,   0.6308807679295904,
    -0.02798376941698385, -0.18703481171888114, 0.030841381835986965,
    0.032883011666982945, -0.010597401784997278};

constexpr std::size_t kTaps = kScaling.size();

struct FilterBank {
  std::array<double, kTaps> lo_d{};
  std::array<double, kTaps> hi_d{};
  std::array<double, kTaps> lo_r{};
  std::array<double, kTaps> hi_r{};

  constexpr FilterBank() {
    for (std::size_t k = 0; k < kTaps; ++k) {
      lo_r[k] = kScaling[k];
      hi_r[k] = ((k % 2 == 0) ? 1.0 : -1.0) * kScaling[kTaps - 1 - k];
    }
    for (std::size_t k = 0; k < kTaps; ++k) {
      lo_d[k] = lo_r[kTaps - 1 - k];
      hi_d[k] = hi_r[kTaps - 1 - k];
    }
  }
};

constexpr FilterBank kBank{};

// Upsample by two (coefficients on even slots), full convolution with `f`,
// then keep the centred `out.size()` samples and accumulate them into out.
void upsample_convolve_add(std::span<const double> c, const std::array<double, kTaps>& f,
                           std::span<double> out) {
  const std::size_t up_len = 2 * c.size() - 1;
  const std::size_t full_len = up_len + kTaps - 1;
  const std::size_t start = (full_len - out.size()) / 2;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t n = start + i;  // index into the full convolution
    double acc = 0.0;
    // z[n] = sum_k f[k] * up[n - k], up[j] = c[j/2] for even j
    const std::size_t k_lo = n >= up_len - 1 ? n - (up_len - 1) : 0;
    const std::size_t k_hi = std::min(n, kTaps - 1);
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
      const std::size_t j = n - k;
      if ((j & 1u) == 0) acc += f[k] * c[j / 2];
    }
    out[i] += acc;
  }
}

}  // namespace

std::span<const double> daubechies8() { return kScaling; }

std::size_t reflect(std::ptrdiff_t i, std::size_t n) noexcept {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < static_cast<std::ptrdiff_t>(n) ? m : period - 1 - m);
}

std::size_t coefficient_length(std::size_t n) noexcept { return (n + kTaps - 1) / 2; }

void analyze_1d(std::span<const double> x, std::span<double> approx, std::span<double> detail) {
  const std::size_t n = x.size();
  const std::size_t out_len = coefficient_length(n);
  const auto ext = static_cast<std::ptrdiff_t>(kTaps - 1);
  // Valid convolution of the (taps-1)-extended signal, keeping odd outputs.
  for (std::size_t o = 0; o < out_len; ++o) {
    const std::size_t v = 2 * o + 1;
    double a = 0.0, d = 0.0;
    for (std::size_t k = 0; k < kTaps; ++k) {
      const std::ptrdiff_t src =
          static_cast<std::ptrdiff_t>(v + kTaps - 1 - k) - ext;
      const double s = x[reflect(src, n)];
      a += kBank.lo_d[k] * s;
      d += kBank.hi_d[k] * s;
    }
    approx[o] = a;
    detail[o] = d;
  }
}

void synthesize_1d(std::span<const double> approx, std::span<const double> detail,
                   std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  upsample_convolve_add(approx, kBank.lo_r, out);
  upsample_convolve_add(detail, kBank.hi_r, out);
}

Decomposition decompose(const Band& image, int levels) {
  Decomposition dec;
  Band current = image;
  std::vector<double> line_in, line_a, line_d;
  for (int level = 0; level < levels; ++level) {
    const std::size_t w = current.width, h = current.height;
    const std::size_t cw = coefficient_length(w), ch = coefficient_length(h);

    // Rows: split into low (L) and high (H) halves, each cw wide.
    Band row_lo(cw, h), row_hi(cw, h);
    line_a.resize(cw);
    line_d.resize(cw);
    for (std::size_t y = 0; y < h; ++y) {
      std::span<const double> row(current.values.data() + y * w, w);
      analyze_1d(row, line_a, line_d);
      std::copy(line_a.begin(), line_a.end(), row_lo.values.begin() + y * cw);
      std::copy(line_d.begin(), line_d.end(), row_hi.values.begin() + y * cw);
    }

    // Columns.
    DetailLevel detail;
    detail.source_width = w;
    detail.source_height = h;
    Band ll(cw, ch);
    detail.lh = Band(cw, ch);
    detail.hl = Band(cw, ch);
    detail.hh = Band(cw, ch);
    line_in.resize(h);
    line_a.resize(ch);
    line_d.resize(ch);
    auto split_columns = [&](const Band& src, Band& lo, Band& hi) {
      for (std::size_t x = 0; x < cw; ++x) {
        for (std::size_t y = 0; y < h; ++y) line_in[y] = src.at(x, y);
        analyze_1d(line_in, line_a, line_d);
        for (std::size_t y = 0; y < ch; ++y) {
          lo.at(x, y) = line_a[y];
          hi.at(x, y) = line_d[y];
        }
      }
    };
    split_columns(row_lo, ll, detail.lh);
    split_columns(row_hi, detail.hl, detail.hh);

    dec.levels.push_back(std::move(detail));
    current = std::move(ll);
  }
  dec.approximation = std::move(current);
  return dec;
}

Band reconstruct(const Decomposition& dec) {
  Band current = dec.approximation;
  std::vector<double> col_a, col_d, line_out;
  for (auto it = dec.levels.rbegin(); it != dec.levels.rend(); ++it) {
    const DetailLevel& lvl = *it;
    const std::size_t w = lvl.source_width, h = lvl.source_height;
    const std::size_t cw = current.width, ch = current.height;

    Band row_lo(cw, h), row_hi(cw, h);
    col_a.resize(ch);
    col_d.resize(ch);
    line_out.resize(h);
    auto merge_columns = [&](const Band& lo, const Band& hi, Band& dst) {
      for (std::size_t x = 0; x < cw; ++x) {
        for (std::size_t y = 0; y < ch; ++y) {
          col_a[y] = lo.at(x, y);
          col_d[y] = hi.at(x, y);
        }
        synthesize_1d(col_a, col_d, line_out);
        for (std::size_t y = 0; y < h; ++y) dst.at(x, y) = line_out[y];
      }
    };
    merge_columns(current, lvl.lh, row_lo);
    merge_columns(lvl.hl, lvl.hh, row_hi);

    Band out(w, h);
    for (std::size_t y = 0; y < h; ++y) {
      std::span<const double> a(row_lo.values.data() + y * cw, cw);
      std::span<const double> d(row_hi.values.data() + y * cw, cw);
      synthesize_1d(a, d, std::span<double>(out.values.data() + y * w, w));
    }
    current = std::move(out);
  }
  return current;
}

void local_wiener(Band& band, double noise_var, std::span<const int> windows) {
  const std::size_t w = band.width, h = band.height;
  if (w == 0 || h == 0 || windows.empty()) return;

  int max_window = 0;
  for (int k : windows) max_window = std::max(max_window, k);
  const std::size_t pad = static_cast<std::size_t>(max_window / 2);
  const std::size_t pw = w + 2 * pad, ph = h + 2 * pad;

  // Summed-area table of squared coefficients over the mirrored, padded band.
  std::vector<double> sat((pw + 1) * (ph + 1), 0.0);
  for (std::size_t y = 0; y < ph; ++y) {
    const std::size_t sy = reflect(static_cast<std::ptrdiff_t>(y) - static_cast<std::ptrdiff_t>(pad), h);
    double row_sum = 0.0;
    for (std::size_t x = 0; x < pw; ++x) {
      const std::size_t sx =
          reflect(static_cast<std::ptrdiff_t>(x) - static_cast<std::ptrdiff_t>(pad), w);
      const double c = band.at(sx, sy);
      row_sum += c * c;
      sat[(y + 1) * (pw + 1) + (x + 1)] = sat[y * (pw + 1) + (x + 1)] + row_sum;
    }
  }
  auto box = [&](std::size_t x0, std::size_t y0, std::size_t x1, std::size_t y1) {
    return sat[y1 * (pw + 1) + x1] - sat[y0 * (pw + 1) + x1] - sat[y1 * (pw + 1) + x0] +
           sat[y0 * (pw + 1) + x0];
  };

  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double est = std::numeric_limits<double>::infinity();
      for (int k : windows) {
        const std::size_t r = static_cast<std::size_t>(k / 2);
        // Padded coordinates of the window centre are (x + pad, y + pad).
        const std::size_t x0 = x + pad - r, y0 = y + pad - r;
        const double m2 = box(x0, y0, x0 + k, y0 + k) / static_cast<double>(k * k);
        est = std::min(est, std::max(0.0, m2 - noise_var));
      }
      band.at(x, y) *= est / (est + noise_var);
    }
  }
}

}  // namespace prnu::wavelet
