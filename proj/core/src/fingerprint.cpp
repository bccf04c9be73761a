#include "prnu/fingerprint.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prnu/error.hpp"

namespace prnu {

GroupPlan plan_groups(std::uint64_t frame_count, std::uint32_t depth) {
  if (frame_count == 0) fail(Errc::EmptyStream, "no frames to group");
  if (depth == 0) fail(Errc::BadParameter, "depth must be >= 1");
  if (depth > frame_count) {
    fail(Errc::DepthExceedsFrames, "depth " + std::to_string(depth) + " exceeds " +
                                       std::to_string(frame_count) + " frames");
  }
  GroupPlan plan;
  const std::uint64_t g = frame_count / depth;
  plan.groups.reserve(g);
  for (std::uint64_t i = 0; i < g; ++i) plan.groups.push_back({i * depth, (i + 1) * depth});
  plan.dropped = frame_count - g * depth;
  return plan;
}

LumaPlane sda_average(std::span<const LumaPlane> frames) {
  if (frames.empty()) fail(Errc::EmptyAccumulator, "sda_average of zero frames");
  SdaAccumulator acc(frames.front().width, frames.front().height,
                     static_cast<std::uint32_t>(frames.size()));
  for (const auto& f : frames) acc.add(f);
  return acc.take();
}

SdaAccumulator::SdaAccumulator(std::uint32_t width, std::uint32_t height,
                               std::uint32_t target_depth)
    : width_(width),
      height_(height),
      target_depth_(target_depth),
      running_sum_(static_cast<std::size_t>(width) * height, 0.0) {
  if (target_depth == 0) fail(Errc::BadParameter, "SDA depth must be >= 1");
}

void SdaAccumulator::add(const LumaPlane& frame) {
  if (frame.width != width_ || frame.height != height_) {
    fail(Errc::DimensionMismatch, "SDA group frames must share dimensions");
  }
  if (full()) fail(Errc::BadParameter, "SDA group already holds its target depth");
  for (std::size_t i = 0; i < running_sum_.size(); ++i) running_sum_[i] += frame.data[i];
  ++count_;
}

LumaPlane SdaAccumulator::take() {
  if (count_ == 0) fail(Errc::EmptyAccumulator, "SDA group is empty");
  LumaPlane out(width_, height_);
  const double n = count_;
  for (std::size_t i = 0; i < running_sum_.size(); ++i) {
    out.data[i] = static_cast<float>(running_sum_[i] / n);
    running_sum_[i] = 0.0;
  }
  count_ = 0;
  return out;
}

const char* mode_name(ExtractionMode mode) noexcept {
  switch (mode) {
    case ExtractionMode::Conventional: return "conventional";
    case ExtractionMode::Sda: return "sda";
    case ExtractionMode::Stride: return "stride";
  }
  return "?";
}

ExtractionSpec ExtractionSpec::sda(std::uint32_t depth) {
  if (depth == 0) fail(Errc::BadParameter, "SDA depth must be >= 1");
  if (depth == 1) return conventional();
  return {ExtractionMode::Sda, depth};
}

ExtractionSpec ExtractionSpec::stride(std::uint32_t k) {
  if (k == 0) fail(Errc::BadParameter, "stride must be >= 1");
  if (k == 1) return conventional();
  return {ExtractionMode::Stride, k};
}

std::string ExtractionSpec::label() const {
  switch (mode) {
    case ExtractionMode::Conventional: return "conventional";
    case ExtractionMode::Sda: return "sda-" + std::to_string(parameter);
    case ExtractionMode::Stride: return "stride-" + std::to_string(parameter);
  }
  return "?";
}

MleAccumulator::MleAccumulator(std::uint32_t width, std::uint32_t height, std::uint32_t depth)
    : width_(width),
      height_(height),
      depth_(depth),
      sum_wi_(static_cast<std::size_t>(width) * height, 0.0),
      sum_i2_(static_cast<std::size_t>(width) * height, 0.0) {}

void MleAccumulator::accumulate(const NoiseResidual& residual, const LumaPlane& source) {
  if (residual.width() != width_ || residual.height() != height_ || source.width != width_ ||
      source.height != height_) {
    fail(Errc::DimensionMismatch, "MLE contribution does not match accumulator geometry");
  }
  const float* w = residual.plane.data.data();
  const float* im = source.data.data();
  for (std::size_t i = 0; i < sum_wi_.size(); ++i) {
    const double iv = im[i];
    sum_wi_[i] += static_cast<double>(w[i]) * iv;
    sum_i2_[i] += iv * iv;
  }
  frames_consumed_ += residual.source_frames;
  ++residuals_consumed_;
}

MleAccumulator& accumulate_mle(MleAccumulator& acc, const NoiseResidual& residual,
                               const LumaPlane& source) {
  acc.accumulate(residual, source);
  return acc;
}

Plane mle_ratio(const MleAccumulator& acc) {
  if (acc.residuals_consumed() == 0) fail(Errc::EmptyAccumulator, "no contributions absorbed");
  Plane k(acc.width(), acc.height());
  const auto num = acc.sum_wi();
  const auto den = acc.sum_i2();
  for (std::size_t i = 0; i < k.size(); ++i) {
    k.data[i] = static_cast<float>(num[i] / std::max(den[i], kMleDenominatorFloor));
  }
  return k;
}

FingerprintEstimate finalize_mle(const MleAccumulator& acc, ExtractionMode mode) {
  FingerprintEstimate fp;
  fp.width = acc.width();
  fp.height = acc.height();
  fp.khat = zero_mean_rows_cols(mle_ratio(acc));
  fp.frames_consumed = static_cast<std::uint32_t>(acc.frames_consumed());
  fp.denoise_ops = static_cast<std::uint32_t>(acc.residuals_consumed());
  fp.depth = acc.depth();
  fp.mode = mode;
  return fp;
}

}  // namespace prnu
