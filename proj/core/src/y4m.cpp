#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "prnu/error.hpp"
#include "prnu/media_io.hpp"

namespace prnu {
namespace {

constexpr std::string_view kSignature = "YUV4MPEG2";
constexpr std::string_view kFrameMarker = "FRAME";
// Header and frame lines are short; anything longer is not a Y4M stream.
constexpr std::size_t kMaxLine = 4096;

std::size_t chroma_size(Colorspace cs, std::uint32_t w, std::uint32_t h) {
  switch (cs) {
    case Colorspace::C420:
    case Colorspace::C420jpeg:
    case Colorspace::C420mpeg2: {
      const std::size_t cw = (w + 1) / 2;
      const std::size_t ch = (h + 1) / 2;
      return 2 * cw * ch;
    }
    case Colorspace::C444: return 2 * static_cast<std::size_t>(w) * h;
    case Colorspace::Gray: return 0;
  }
  return 0;
}

std::uint32_t parse_dim(const std::string& tag) {
  const std::string digits = tag.substr(1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    fail(Errc::BadSignature, "bad dimension tag '" + tag + "'");
  }
  const unsigned long v = std::stoul(digits);
  if (v == 0 || v > 0xFFFFFFFFul) fail(Errc::BadSignature, "bad dimension tag '" + tag + "'");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

const char* colorspace_tag(Colorspace cs) noexcept {
  switch (cs) {
    case Colorspace::Gray: return "mono";
    case Colorspace::C420: return "420";
    case Colorspace::C420jpeg: return "420jpeg";
    case Colorspace::C420mpeg2: return "420mpeg2";
    case Colorspace::C444: return "444";
  }
  return "?";
}

Y4mStream::Y4mStream(std::unique_ptr<std::istream> in) : in_(std::move(in)) {
  std::string line;
  if (!in_ || !std::getline(*in_, line) || line.size() > kMaxLine) {
    fail(Errc::BadSignature, "missing YUV4MPEG2 header line");
  }
  if (line.compare(0, kSignature.size(), kSignature) != 0 ||
      (line.size() > kSignature.size() && line[kSignature.size()] != ' ')) {
    fail(Errc::BadSignature, "stream does not start with 'YUV4MPEG2 '");
  }
  std::istringstream tags(line.substr(kSignature.size()));
  std::string tag;
  bool have_w = false, have_h = false;
  colorspace_ = Colorspace::C420jpeg;  // Y4M default when no C tag is present
  while (tags >> tag) {
    tags_.push_back(tag);
    switch (tag[0]) {
      case 'W': width_ = parse_dim(tag); have_w = true; break;
      case 'H': height_ = parse_dim(tag); have_h = true; break;
      case 'C': {
        const std::string cs = tag.substr(1);
        if (cs == "420") colorspace_ = Colorspace::C420;
        else if (cs == "420jpeg") colorspace_ = Colorspace::C420jpeg;
        else if (cs == "420mpeg2") colorspace_ = Colorspace::C420mpeg2;
        else if (cs == "444") colorspace_ = Colorspace::C444;
        else fail(Errc::BadSignature, "unsupported colorspace '" + tag + "'");
        break;
      }
      default: break;
    }
  }
  if (!have_w || !have_h) fail(Errc::BadSignature, "header lacks W/H tags");
  chroma_bytes_ = chroma_size(colorspace_, width_, height_);
}

Y4mStream::~Y4mStream() = default;

std::optional<FrameBuffer> Y4mStream::next() {
  if (done_) return std::nullopt;

  // A clean end of input at a record boundary terminates the stream.
  if (in_->peek() == std::char_traits<char>::eof()) {
    done_ = true;
    return std::nullopt;
  }
  std::string line;
  if (!std::getline(*in_, line) || line.size() > kMaxLine ||
      line.compare(0, kFrameMarker.size(), kFrameMarker) != 0) {
    done_ = true;
    fail(Errc::MissingFrameMarker, "record " + std::to_string(index_) + " lacks FRAME marker");
  }

  const std::size_t luma = static_cast<std::size_t>(width_) * height_;
  std::vector<char> buf(luma);
  in_->read(buf.data(), static_cast<std::streamsize>(luma));
  if (static_cast<std::size_t>(in_->gcount()) != luma) {
    done_ = true;
    fail(Errc::ShortFrame, "frame " + std::to_string(index_) + " luma plane truncated");
  }
  if (chroma_bytes_ > 0) {
    in_->ignore(static_cast<std::streamsize>(chroma_bytes_));
    if (static_cast<std::size_t>(in_->gcount()) != chroma_bytes_) {
      done_ = true;
      fail(Errc::ShortFrame, "frame " + std::to_string(index_) + " chroma planes truncated");
    }
  }

  FrameBuffer frame;
  frame.width = width_;
  frame.height = height_;
  frame.channels = 1;
  frame.source_index = index_++;
  frame.data.resize(luma);
  for (std::size_t i = 0; i < luma; ++i) {
    frame.data[i] = static_cast<float>(static_cast<std::uint8_t>(buf[i]));
  }
  return frame;
}

std::unique_ptr<FrameStream> open_y4m(std::unique_ptr<std::istream> in) {
  return std::make_unique<Y4mStream>(std::move(in));
}

std::unique_ptr<FrameStream> open_y4m_file(const std::filesystem::path& path) {
  auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*in) fail(Errc::IoFailure, "cannot open " + path.string());
  try {
    return open_y4m(std::move(in));
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

Y4mWriter::Y4mWriter(std::ostream& out, std::uint32_t width, std::uint32_t height,
                     Colorspace cs, std::string frame_rate)
    : out_(out), width_(width), height_(height), chroma_bytes_(chroma_size(cs, width, height)) {
  if (cs == Colorspace::Gray) fail(Errc::BadParameter, "Y4M output needs a chroma layout");
  out_ << "YUV4MPEG2 W" << width_ << " H" << height_ << " F" << frame_rate << " Ip A1:1 C"
       << colorspace_tag(cs) << '\n';
  scratch_.resize(static_cast<std::size_t>(width_) * height_);
  if (!out_) fail(Errc::IoFailure, "Y4M header write failed");
}

void Y4mWriter::write_frame(const Plane& luma) {
  if (luma.width != width_ || luma.height != height_) {
    fail(Errc::DimensionMismatch, "Y4M frame geometry differs from stream header");
  }
  for (std::size_t i = 0; i < luma.size(); ++i) scratch_[i] = quantize_u8(luma.data[i]);
  out_ << "FRAME\n";
  out_.write(reinterpret_cast<const char*>(scratch_.data()),
             static_cast<std::streamsize>(scratch_.size()));
  const std::string neutral(chroma_bytes_, static_cast<char>(128));
  out_.write(neutral.data(), static_cast<std::streamsize>(neutral.size()));
  if (!out_) fail(Errc::IoFailure, "Y4M frame write failed");
  ++frames_;
}

}  // namespace prnu
