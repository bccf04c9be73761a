#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "prnu/denoise.hpp"
#include "prnu/media_io.hpp"
#include "prnu/plane.hpp"

namespace prnu {

// ---------------------------------------------------------------------------
// Grouping

struct IndexRange {
  std::uint64_t begin = 0;  // inclusive
  std::uint64_t end = 0;    // exclusive

  std::uint64_t size() const noexcept { return end - begin; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct GroupPlan {
  std::vector<IndexRange> groups;
  std::uint64_t dropped = 0;  // trailing frames that do not fill a group
};

/// floor(m / d) contiguous groups of exactly d frames in stream order.
/// Throws DepthExceedsFrames when d > m.
GroupPlan plan_groups(std::uint64_t frame_count, std::uint32_t depth);

/// Element-wise arithmetic mean with double accumulation.
LumaPlane sda_average(std::span<const LumaPlane> frames);

/// Running sum of frames for one SDA group.
class SdaAccumulator {
 public:
  SdaAccumulator(std::uint32_t width, std::uint32_t height, std::uint32_t target_depth);

  void add(const LumaPlane& frame);
  bool full() const noexcept { return count_ == target_depth_; }
  std::uint32_t count() const noexcept { return count_; }
  std::uint32_t target_depth() const noexcept { return target_depth_; }

  /// Emits the mean of the absorbed frames and resets for the next group.
  LumaPlane take();

 private:
  std::uint32_t width_;
  std::uint32_t height_;
  std::uint32_t target_depth_;
  std::uint32_t count_ = 0;
  std::vector<double> running_sum_;
};

// ---------------------------------------------------------------------------
// Maximum likelihood estimate

enum class ExtractionMode : std::uint8_t { Conventional = 0, Sda = 1, Stride = 2 };

const char* mode_name(ExtractionMode mode) noexcept;

/// Which frames are denoised and how. sda(1) and stride(1) normalise to
/// conventional, which keeps depth == 1 equivalent to conventional mode.
struct ExtractionSpec {
  ExtractionMode mode = ExtractionMode::Conventional;
  std::uint32_t parameter = 1;  // SDA depth or stride

  static ExtractionSpec conventional() { return {}; }
  static ExtractionSpec sda(std::uint32_t depth);
  static ExtractionSpec stride(std::uint32_t k);

  std::string label() const;
  friend bool operator==(const ExtractionSpec&, const ExtractionSpec&) = default;
};

/// Numerator and denominator planes of the MLE, sum W*I and sum I^2.
class MleAccumulator {
 public:
  MleAccumulator(std::uint32_t width, std::uint32_t height, std::uint32_t depth = 1);

  /// Adds W (.) I and I (.) I. Throws DimensionMismatch.
  void accumulate(const NoiseResidual& residual, const LumaPlane& source);

  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t height() const noexcept { return height_; }
  std::uint32_t depth() const noexcept { return depth_; }
  std::uint64_t frames_consumed() const noexcept { return frames_consumed_; }
  std::uint64_t residuals_consumed() const noexcept { return residuals_consumed_; }
  std::span<const double> sum_wi() const noexcept { return sum_wi_; }
  std::span<const double> sum_i2() const noexcept { return sum_i2_; }

 private:
  std::uint32_t width_;
  std::uint32_t height_;
  std::uint32_t depth_;
  std::uint64_t frames_consumed_ = 0;
  std::uint64_t residuals_consumed_ = 0;
  std::vector<double> sum_wi_;
  std::vector<double> sum_i2_;
};

MleAccumulator& accumulate_mle(MleAccumulator& acc, const NoiseResidual& residual,
                               const LumaPlane& source);

/// Floor applied to sum I^2 before dividing.
inline constexpr double kMleDenominatorFloor = 1e-6;

struct FingerprintEstimate {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  Plane khat;
  std::uint32_t frames_consumed = 0;
  std::uint32_t denoise_ops = 0;
  std::uint32_t depth = 1;  // SDA depth, or the stride for stride mode
  ExtractionMode mode = ExtractionMode::Conventional;

  friend bool operator==(const FingerprintEstimate&, const FingerprintEstimate&) = default;
};

/// sum_WI / max(sum_I2, floor) without the zero-mean cleanup.
Plane mle_ratio(const MleAccumulator& acc);

/// mle_ratio followed by row/column zero-mean. Throws EmptyAccumulator.
FingerprintEstimate finalize_mle(const MleAccumulator& acc,
                                 ExtractionMode mode = ExtractionMode::Conventional);

// ---------------------------------------------------------------------------
// Pipeline

struct PipelineOptions {
  DenoiseParams denoise;
  /// Worker threads for denoising. The result does not depend on this.
  unsigned jobs = 1;
};

struct ExtractionStats {
  std::uint64_t frames_read = 0;
  std::uint64_t frames_used = 0;
  std::uint64_t frames_dropped = 0;
  std::uint64_t denoise_ops = 0;
  double elapsed_seconds = 0.0;
};

/// Builds a fingerprint from a frame stream:
///  - conventional: denoise every frame;
///  - sda(d): average consecutive groups of d frames, denoise each average,
///    and use the average itself as the illumination term;
///  - stride(k): keep frames whose source index is a multiple of k, then
///    proceed as conventional.
/// Residuals are reduced in stream order whatever the worker count.
FingerprintEstimate extract_fingerprint(FrameStream& stream, const ExtractionSpec& spec,
                                        const PipelineOptions& options = {},
                                        ExtractionStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Persistence (little-endian, CRC32 over the plane bytes)

inline constexpr std::uint16_t kFingerprintVersion = 1;

void save_fingerprint(const FingerprintEstimate& fp, std::ostream& out);
FingerprintEstimate load_fingerprint(std::istream& in);

void save_fingerprint_file(const FingerprintEstimate& fp, const std::filesystem::path& path);
FingerprintEstimate load_fingerprint_file(const std::filesystem::path& path);

}  // namespace prnu
