#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>

#include "prnu/correlate.hpp"
#include "prnu/plane.hpp"

namespace prnu::synth {

/// Ground-truth camera: a fixed PRNU field K and additive sensor noise.
struct SynthCameraModel {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  Plane k_field;
  double sigma_k = 0.0;
  double sigma1 = 0.0;
  std::uint64_t seed = 0;
};

/// K ~ N(0, sigma_k^2) i.i.d., then mean-subtracted. sigma_k in (0, 0.1].
SynthCameraModel gen_model(std::uint32_t width, std::uint32_t height, double sigma_k,
                           double sigma1, std::uint64_t seed);

struct SceneSpec {
  enum class Kind { Flat, Textured };

  Kind kind = Kind::Flat;
  double luminance = 128.0;  // flat scenes
  double cutoff = 8.0;       // textured: wavelength (px) where the blur passes half amplitude
  double contrast = 60.0;    // textured: standard deviation around mid-gray

  static SceneSpec flat(double luminance) { return {Kind::Flat, luminance, 0.0, 0.0}; }
  static SceneSpec textured(double cutoff, double contrast) {
    return {Kind::Textured, 128.0, cutoff, contrast};
  }
};

inline constexpr float kSceneMin = 16.0f;
inline constexpr float kSceneMax = 240.0f;

/// Spatial sigma of the Gaussian whose response exp(-2 pi^2 s^2 f^2) equals
/// 1/2 at f = 1 / cutoff.
double blur_sigma_for_cutoff(double cutoff) noexcept;

/// Noise-free scene I0. Flat scenes are constant; textured scenes are white
/// noise low-passed by a Gaussian whose frequency response is 1/2 at a period
/// of `cutoff` pixels, rescaled to `contrast` standard deviation around 128.
/// All values are clamped to [16, 240].
Plane render_scene(const SceneSpec& spec, std::uint32_t width, std::uint32_t height,
                   std::uint64_t seed);

/// I = clamp(I0 + I0 (.) K + eta, 0, 255), eta ~ N(0, sigma1^2) drawn from
/// frame_seed.
Plane render_frame(const SynthCameraModel& model, const Plane& scene, std::uint64_t frame_seed);

/// Direct O(N^4) spatial-domain circular NCC; both sides at most 64.
CorrelationSurface brute_force_correlation(const Plane& a, const Plane& b);

inline constexpr std::uint32_t kBruteForceMaxSide = 64;

/// Provides the noise-free scene for frame i.
using SceneSource = std::function<Plane(std::uint64_t frame_index)>;

struct CorpusOptions {
  std::uint64_t frame_seed_base = 0;
};

/// Renders `frame_count` frames and writes them as a C420 YUV4MPEG2 stream.
/// Frame i uses noise seed derive_seed(frame_seed_base, i).
void write_y4m_corpus(const SynthCameraModel& model, const SceneSource& scenes,
                      std::uint64_t frame_count, std::ostream& out,
                      const CorpusOptions& options = {});

/// Deterministic seed mixing (splitmix64 finaliser over the pair).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// k_field wrapped as a fingerprint so it can be stored in the fingerprint
/// file format.
FingerprintEstimate truth_fingerprint(const SynthCameraModel& model);

}  // namespace prnu::synth
