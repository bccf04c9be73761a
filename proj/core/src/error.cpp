#include "prnu/error.hpp"

namespace prnu {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::UnsupportedMagic: return "UnsupportedMagic";
    case Errc::TruncatedPayload: return "TruncatedPayload";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::BadSignature: return "BadSignature";
    case Errc::MissingFrameMarker: return "MissingFrameMarker";
    case Errc::ShortFrame: return "ShortFrame";
    case Errc::UnsupportedChannelCount: return "UnsupportedChannelCount";
    case Errc::PlaneTooSmall: return "PlaneTooSmall";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DepthExceedsFrames: return "DepthExceedsFrames";
    case Errc::EmptyAccumulator: return "EmptyAccumulator";
    case Errc::EmptyStream: return "EmptyStream";
    case Errc::BadMagic: return "BadMagic";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::ChecksumMismatch: return "ChecksumMismatch";
    case Errc::ConstantInput: return "ConstantInput";
    case Errc::DegenerateSurface: return "DegenerateSurface";
    case Errc::FrameSmallerThanBlock: return "FrameSmallerThanBlock";
    case Errc::BadParameter: return "BadParameter";
    case Errc::TooLarge: return "TooLarge";
    case Errc::IoFailure: return "IoFailure";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::NoPositives: return "NoPositives";
    case Errc::SingleClass: return "SingleClass";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), detail_(what) {}

Error Error::with_context(const std::string& context) const {
  return Error(code_, context + ": " + detail_);
}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace prnu
