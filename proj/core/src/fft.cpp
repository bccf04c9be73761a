#include "prnu/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace prnu::fft {
namespace {

// The FFTW planner is not re-entrant; plan creation and destruction are
// serialised, execution is not.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {}
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  void* ptr;
};

struct Plan {
  explicit Plan(fftw_plan p) : plan(p) {}
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  fftw_plan plan;
};

}  // namespace

Spectrum forward(std::span<const double> image, std::size_t width, std::size_t height) {
  Spectrum out;
  out.width = width;
  out.height = height;
  const std::size_t nbins = height * out.bins_per_row();

  FftwBuffer in(sizeof(double) * width * height);
  FftwBuffer spec(sizeof(fftw_complex) * nbins);
  auto* in_d = static_cast<double*>(in.ptr);
  auto* spec_c = static_cast<fftw_complex*>(spec.ptr);

  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_r2c_2d(static_cast<int>(height), static_cast<int>(width), in_d, spec_c,
                               FFTW_ESTIMATE);
  }
  Plan plan(raw);
  std::copy(image.begin(), image.end(), in_d);
  fftw_execute(plan.plan);

  out.bins.resize(nbins);
  for (std::size_t i = 0; i < nbins; ++i) out.bins[i] = {spec_c[i][0], spec_c[i][1]};
  return out;
}

std::vector<double> inverse(const Spectrum& spectrum) {
  const std::size_t nbins = spectrum.bins.size();
  const std::size_t n = spectrum.width * spectrum.height;

  FftwBuffer spec(sizeof(fftw_complex) * nbins);
  FftwBuffer out(sizeof(double) * n);
  auto* spec_c = static_cast<fftw_complex*>(spec.ptr);
  auto* out_d = static_cast<double*>(out.ptr);

  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_c2r_2d(static_cast<int>(spectrum.height), static_cast<int>(spectrum.width),
                               spec_c, out_d, FFTW_ESTIMATE);
  }
  Plan plan(raw);
  // c2r destroys its input, so the copy is made after planning.
  for (std::size_t i = 0; i < nbins; ++i) {
    spec_c[i][0] = spectrum.bins[i].real();
    spec_c[i][1] = spectrum.bins[i].imag();
  }
  fftw_execute(plan.plan);
  return std::vector<double>(out_d, out_d + n);
}

std::vector<double> cross_correlate(std::span<const double> a, std::span<const double> b,
                                    std::size_t width, std::size_t height) {
  Spectrum fa = forward(a, width, height);
  const Spectrum fb = forward(b, width, height);
  for (std::size_t i = 0; i < fa.bins.size(); ++i) fa.bins[i] = std::conj(fa.bins[i]) * fb.bins[i];
  std::vector<double> r = inverse(fa);
  const double scale = 1.0 / static_cast<double>(width * height);
  for (double& v : r) v *= scale;
  return r;
}

}  // namespace prnu::fft
