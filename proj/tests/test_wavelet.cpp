#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "prnu/wavelet.hpp"

namespace {

namespace wl = prnu::wavelet;

std::vector<double> random_signal(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d(0.0, 10.0);
  std::vector<double> x(n);
  for (auto& v : x) v = d(rng);
  return x;
}

// Analysis by the textbook recipe: pad both ends with a mirrored copy of
// taps-1 samples, run a full-length correlation and keep every second output.
void reference_analysis(const std::vector<double>& x, std::vector<double>& a,
                        std::vector<double>& d) {
  const auto h = wl::daubechies8();
  const std::size_t L = h.size(), n = x.size(), pad = L - 1;
  // Mirrored copy built explicitly so the helper does not depend on reflect().
  std::vector<double> padded;
  std::vector<double> period(x.begin(), x.end());
  period.insert(period.end(), x.rbegin(), x.rend());  // x0..xn-1 xn-1..x0
  for (std::size_t i = 0; i < pad; ++i) {
    const std::size_t back = pad - i;  // distance left of x0
    padded.push_back(period[(2 * n - back) % (2 * n)]);
  }
  padded.insert(padded.end(), x.begin(), x.end());
  for (std::size_t i = 0; i < pad; ++i) padded.push_back(period[(n + i) % (2 * n)]);

  std::vector<double> lo_d(L), hi_d(L);
  for (std::size_t k = 0; k < L; ++k) {
    lo_d[k] = h[L - 1 - k];
    hi_d[k] = (((L - 1 - k) % 2 == 0) ? 1.0 : -1.0) * h[k];
  }
  const std::size_t out = (n + L - 1) / 2;
  a.assign(out, 0.0);
  d.assign(out, 0.0);
  for (std::size_t o = 0; o < out; ++o) {
    const std::size_t i = 2 * o + 1;  // position in the full convolution
    for (std::size_t k = 0; k < L; ++k) {
      const double s = padded[i + pad - k];
      a[o] += lo_d[k] * s;
      d[o] += hi_d[k] * s;
    }
  }
}

TEST(Daubechies8, FilterIsOrthonormal) {
  const auto h = wl::daubechies8();
  ASSERT_EQ(h.size(), 8u);
  double sum = 0, energy = 0;
  for (double v : h) {
    sum += v;
    energy += v * v;
  }
  EXPECT_NEAR(sum, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(energy, 1.0, 1e-12);
  for (std::size_t shift = 2; shift < 8; shift += 2) {
    double dot = 0;
    for (std::size_t k = 0; k + shift < 8; ++k) dot += h[k] * h[k + shift];
    EXPECT_NEAR(dot, 0.0, 1e-12) << "shift " << shift;
  }
}

TEST(Daubechies8, HasFourVanishingMoments) {
  const auto h = wl::daubechies8();
  for (int p = 0; p < 4; ++p) {
    double m = 0;
    for (std::size_t k = 0; k < 8; ++k) m += ((k % 2) ? -1.0 : 1.0) * std::pow(double(k), p) * h[k];
    EXPECT_NEAR(m, 0.0, 1e-9) << "moment " << p;
  }
}

TEST(Reflect, MirrorsWithEdgeRepeat) {
  // n=4: ... x1 x0 | x0 x1 x2 x3 | x3 x2 ...
  EXPECT_EQ(wl::reflect(-1, 4), 0u);
  EXPECT_EQ(wl::reflect(-2, 4), 1u);
  EXPECT_EQ(wl::reflect(4, 4), 3u);
  EXPECT_EQ(wl::reflect(5, 4), 2u);
  EXPECT_EQ(wl::reflect(9, 4), 1u);
  EXPECT_EQ(wl::reflect(-9, 4), 0u);
  EXPECT_EQ(wl::reflect(3, 1), 0u);
}

TEST(Analysis, CoefficientLength) {
  EXPECT_EQ(wl::coefficient_length(256), 131u);
  EXPECT_EQ(wl::coefficient_length(16), 11u);
  EXPECT_EQ(wl::coefficient_length(5), 6u);
}

TEST(Analysis, MatchesPaddedConvolution) {
  for (std::size_t n : {5u, 8u, 13u, 64u, 131u}) {
    const auto x = random_signal(n, static_cast<unsigned>(n));
    std::vector<double> ra, rd;
    reference_analysis(x, ra, rd);
    std::vector<double> a(wl::coefficient_length(n)), d(a.size());
    wl::analyze_1d(x, a, d);
    ASSERT_EQ(a.size(), ra.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(a[i], ra[i], 1e-9) << "n=" << n << " i=" << i;
      EXPECT_NEAR(d[i], rd[i], 1e-9) << "n=" << n << " i=" << i;
    }
  }
}

TEST(Analysis, ConstantHasNoDetail) {
  const std::vector<double> x(37, 128.0);
  std::vector<double> a(wl::coefficient_length(37)), d(a.size());
  wl::analyze_1d(x, a, d);
  for (double v : d) EXPECT_NEAR(v, 0.0, 1e-10);
}

TEST(Synthesis, ReconstructsOneLevelExactly) {
  for (std::size_t n : {1u, 2u, 7u, 8u, 9u, 100u, 257u}) {
    const auto x = random_signal(n, 40 + static_cast<unsigned>(n));
    std::vector<double> a(wl::coefficient_length(n)), d(a.size()), y(n);
    wl::analyze_1d(x, a, d);
    wl::synthesize_1d(a, d, y);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y[i], x[i], 1e-9) << "n=" << n;
  }
}

TEST(Decompose, FourLevelRoundTrip) {
  for (auto [w, h] : {std::pair<std::size_t, std::size_t>{64, 64}, {37, 53}, {128, 16}}) {
    wl::Band img(w, h);
    img.values = random_signal(w * h, static_cast<unsigned>(w * 7 + h));
    const auto dec = wl::decompose(img, 4);
    ASSERT_EQ(dec.levels.size(), 4u);
    EXPECT_EQ(dec.levels[0].source_width, w);
    EXPECT_EQ(dec.levels[0].hh.width, wl::coefficient_length(w));
    EXPECT_EQ(dec.levels[1].source_width, wl::coefficient_length(w));
    const auto back = wl::reconstruct(dec);
    ASSERT_EQ(back.width, w);
    ASSERT_EQ(back.height, h);
    double worst = 0;
    for (std::size_t i = 0; i < w * h; ++i) worst = std::max(worst, std::abs(back.values[i] - img.values[i]));
    EXPECT_LT(worst, 1e-8);
  }
}

TEST(LocalWiener, ZeroBandStaysZero) {
  wl::Band b(9, 9);
  const std::vector<int> windows{3, 5, 7, 9};
  wl::local_wiener(b, 9.0, windows);
  for (double v : b.values) EXPECT_EQ(v, 0.0);
}

TEST(LocalWiener, WeakCoefficientsAreSuppressed) {
  // Local energy below the noise floor gives a zero variance estimate.
  wl::Band b(12, 12);
  for (std::size_t i = 0; i < b.values.size(); ++i) b.values[i] = (i % 2) ? 1.0 : -1.0;
  const std::vector<int> windows{3};
  wl::local_wiener(b, 9.0, windows);
  for (double v : b.values) EXPECT_EQ(v, 0.0);
}

TEST(LocalWiener, UniformEnergyGetsTheClosedFormGain) {
  // Every window sees c^2 = 25, so v = 25 - 9 = 16 and the gain is 16/25.
  wl::Band b(10, 10);
  for (std::size_t i = 0; i < b.values.size(); ++i) b.values[i] = (i % 3) ? 5.0 : -5.0;
  const std::vector<int> windows{3, 5};
  wl::local_wiener(b, 9.0, windows);
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    EXPECT_NEAR(b.values[i], ((i % 3) ? 5.0 : -5.0) * 16.0 / 25.0, 1e-12);
  }
}

TEST(LocalWiener, SmallestWindowEstimateWins) {
  // A lone spike: the widest window dilutes it most and therefore decides.
  wl::Band b(15, 15);
  b.at(7, 7) = 30.0;
  wl::Band only9 = b;
  const std::vector<int> all{3, 5, 7, 9};
  const std::vector<int> nine{9};
  wl::local_wiener(b, 1.0, all);
  wl::local_wiener(only9, 1.0, nine);
  const double v = 900.0 / 81.0 - 1.0;
  EXPECT_NEAR(only9.at(7, 7), 30.0 * v / (v + 1.0), 1e-9);
  EXPECT_NEAR(b.at(7, 7), only9.at(7, 7), 1e-12);
}

}  // namespace
