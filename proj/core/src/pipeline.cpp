#include <atomic>
#include <chrono>
#include <exception>
#include <optional>
#include <string>
#include <thread>

#include "prnu/error.hpp"
#include "prnu/fingerprint.hpp"

namespace prnu {
namespace {

// Denoises a batch of (possibly averaged) frames with up to `jobs` workers.
// Output order matches input order, so the caller's reduction is fixed.
std::vector<NoiseResidual> denoise_batch(const std::vector<LumaPlane>& frames,
                                         std::uint32_t source_frames,
                                         const DenoiseParams& params, unsigned jobs) {
  std::vector<NoiseResidual> out(frames.size());
  const unsigned workers = std::min<unsigned>(std::max(1u, jobs), frames.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < frames.size(); ++i) {
      out[i] = extract_residual(frames[i], params, source_frames);
    }
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < frames.size(); i = next++) {
            out[i] = extract_residual(frames[i], params, source_frames);
          }
        } catch (...) {
          errors[w] = std::current_exception();
          next = frames.size();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

FingerprintEstimate extract_fingerprint(FrameStream& stream, const ExtractionSpec& spec,
                                        const PipelineOptions& options, ExtractionStats* stats) {
  const auto t0 = std::chrono::steady_clock::now();
  options.denoise.validate();

  const std::uint32_t width = stream.width();
  const std::uint32_t height = stream.height();
  const std::uint32_t depth = spec.mode == ExtractionMode::Sda ? spec.parameter : 1;
  const std::uint32_t stride = spec.mode == ExtractionMode::Stride ? spec.parameter : 1;

  SdaAccumulator group(width, height, depth);
  MleAccumulator mle(width, height, depth);
  const std::size_t batch_size = 2 * static_cast<std::size_t>(std::max(1u, options.jobs));
  std::vector<LumaPlane> pending;
  pending.reserve(batch_size);

  auto flush = [&] {
    if (pending.empty()) return;
    const auto residuals = denoise_batch(pending, depth, options.denoise, options.jobs);
    for (std::size_t i = 0; i < pending.size(); ++i) mle.accumulate(residuals[i], pending[i]);
    pending.clear();
  };

  std::uint64_t frames_read = 0;
  std::uint64_t frames_selected = 0;
  while (auto frame = stream.next()) {
    ++frames_read;
    if (frame->source_index % stride != 0) continue;
    ++frames_selected;
    group.add(to_luma(*frame));
    if (group.full()) {
      pending.push_back(group.take());
      if (pending.size() == batch_size) flush();
    }
  }
  flush();

  if (frames_read == 0) fail(Errc::EmptyStream, "stream yielded no frames");
  if (mle.residuals_consumed() == 0) {
    fail(Errc::DepthExceedsFrames, "depth " + std::to_string(depth) + " exceeds " +
                                       std::to_string(frames_selected) + " frames");
  }

  FingerprintEstimate fp = finalize_mle(mle, spec.mode);
  if (spec.mode == ExtractionMode::Stride) fp.depth = stride;

  if (stats != nullptr) {
    stats->frames_read = frames_read;
    stats->frames_used = mle.frames_consumed();
    stats->frames_dropped = frames_selected - mle.frames_consumed();
    stats->denoise_ops = mle.residuals_consumed();
    stats->elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return fp;
}

}  // namespace prnu
