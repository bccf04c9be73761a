#pragma once

#include <stdexcept>
#include <string>

namespace prnu {

enum class Errc {
  // media_io
  UnsupportedMagic,
  TruncatedPayload,
  MalformedHeader,
  BadSignature,
  MissingFrameMarker,
  ShortFrame,
  UnsupportedChannelCount,
  // denoise / fingerprint
  PlaneTooSmall,
  DimensionMismatch,
  DepthExceedsFrames,
  EmptyAccumulator,
  EmptyStream,
  BadMagic,
  VersionMismatch,
  TruncatedFile,
  ChecksumMismatch,
  // correlate
  ConstantInput,
  DegenerateSurface,
  FrameSmallerThanBlock,
  // synthcam / analysis
  BadParameter,
  TooLarge,
  IoFailure,
  ZeroDenominator,
  NoPositives,
  SingleClass,
};

const char* errc_name(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }
  /// Message without the leading code name.
  const std::string& detail() const noexcept { return detail_; }

  /// Same code, detail prefixed with `context` (typically a file path).
  Error with_context(const std::string& context) const;

 private:
  Errc code_;
  std::string detail_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace prnu
