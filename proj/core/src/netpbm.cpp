#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "prnu/error.hpp"
#include "prnu/media_io.hpp"

namespace prnu {
namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Tokenizer over the netpbm grammar: whitespace separated tokens, '#' starts a
// comment running to end of line.
class Tokenizer {
 public:
  explicit Tokenizer(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::optional<std::string_view> next() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') ++pos_;
    return std::string_view(reinterpret_cast<const char*>(bytes_.data()) + start,
                            pos_ - start);
  }

  std::size_t position() const noexcept { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t parse_header_number(Tokenizer& tok, const char* field) {
  auto t = tok.next();
  if (!t) fail(Errc::MalformedHeader, std::string("missing ") + field);
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(t->data(), t->data() + t->size(), value);
  if (ec != std::errc{} || ptr != t->data() + t->size()) {
    fail(Errc::MalformedHeader,
         std::string("non-numeric ") + field + " token '" + std::string(*t) + "'");
  }
  return value;
}

}  // namespace

FrameBuffer decode_netpbm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') fail(Errc::UnsupportedMagic, "not a netpbm file");
  const char kind = static_cast<char>(bytes[1]);
  bool ascii = false;
  std::uint8_t channels = 1;
  switch (kind) {
    case '2': ascii = true; channels = 1; break;
    case '3': ascii = true; channels = 3; break;
    case '5': ascii = false; channels = 1; break;
    case '6': ascii = false; channels = 3; break;
    default: fail(Errc::UnsupportedMagic, std::string("magic P") + kind);
  }
  if (bytes.size() > 2 && !is_space(bytes[2]) && bytes[2] != '#') {
    fail(Errc::UnsupportedMagic, "magic not followed by whitespace");
  }

  Tokenizer tok(bytes.subspan(2));
  const std::uint32_t width = parse_header_number(tok, "width");
  const std::uint32_t height = parse_header_number(tok, "height");
  const std::uint32_t maxval = parse_header_number(tok, "maxval");
  if (width == 0 || height == 0) fail(Errc::MalformedHeader, "zero dimension");
  if (maxval == 0 || maxval > 65535) {
    fail(Errc::MalformedHeader, "maxval out of range: " + std::to_string(maxval));
  }

  FrameBuffer frame;
  frame.width = width;
  frame.height = height;
  frame.channels = channels;
  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  frame.data.resize(count);
  const double scale = 255.0 / static_cast<double>(maxval);

  auto store = [&](std::size_t i, std::uint32_t raw) {
    if (raw > maxval) {
      fail(Errc::MalformedHeader, "sample " + std::to_string(raw) + " exceeds maxval");
    }
    frame.data[i] = static_cast<float>(static_cast<double>(raw) * scale);
  };

  if (ascii) {
    for (std::size_t i = 0; i < count; ++i) {
      auto t = tok.next();
      if (!t) {
        fail(Errc::TruncatedPayload, "expected " + std::to_string(count) + " samples, got " +
                                         std::to_string(i));
      }
      std::uint32_t raw = 0;
      auto [ptr, ec] = std::from_chars(t->data(), t->data() + t->size(), raw);
      if (ec != std::errc{} || ptr != t->data() + t->size()) {
        fail(Errc::MalformedHeader, "non-numeric sample '" + std::string(*t) + "'");
      }
      store(i, raw);
    }
    return frame;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t offset = 2 + tok.position();
  if (offset >= bytes.size() || !is_space(bytes[offset])) {
    fail(Errc::TruncatedPayload, "missing raster");
  }
  ++offset;
  const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
  const std::size_t needed = count * sample_bytes;
  if (bytes.size() - offset < needed) {
    fail(Errc::TruncatedPayload, "raster holds " + std::to_string(bytes.size() - offset) +
                                     " bytes, header promises " + std::to_string(needed));
  }
  const std::uint8_t* p = bytes.data() + offset;
  if (sample_bytes == 1) {
    for (std::size_t i = 0; i < count; ++i) store(i, p[i]);
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      store(i, (static_cast<std::uint32_t>(p[2 * i]) << 8) | p[2 * i + 1]);
    }
  }
  return frame;
}

std::uint8_t quantize_u8(float v) noexcept {
  if (!(v > 0.0f)) return 0;
  if (v >= 255.0f) return 255;
  return static_cast<std::uint8_t>(std::lround(v));
}

std::vector<std::uint8_t> encode_netpbm(const FrameBuffer& frame, NetpbmEncoding encoding) {
  if (frame.channels != 1 && frame.channels != 3) {
    fail(Errc::UnsupportedChannelCount, std::to_string(frame.channels) + " channels");
  }
  const bool ascii = encoding == NetpbmEncoding::Ascii;
  const char* magic = frame.channels == 1 ? (ascii ? "P2" : "P5") : (ascii ? "P3" : "P6");
  std::string header = std::string(magic) + "\n" + std::to_string(frame.width) + " " +
                       std::to_string(frame.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  if (ascii) {
    const std::size_t per_row = static_cast<std::size_t>(frame.width) * frame.channels;
    for (std::size_t i = 0; i < frame.data.size(); ++i) {
      const std::string s = std::to_string(quantize_u8(frame.data[i]));
      out.insert(out.end(), s.begin(), s.end());
      out.push_back((i + 1) % per_row == 0 ? '\n' : ' ');
    }
  } else {
    out.reserve(out.size() + frame.data.size());
    for (float v : frame.data) out.push_back(quantize_u8(v));
  }
  return out;
}

FrameBuffer read_netpbm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoFailure, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_netpbm(bytes);
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

void write_netpbm_file(const std::filesystem::path& path, const FrameBuffer& frame,
                       NetpbmEncoding encoding) {
  const auto bytes = encode_netpbm(frame, encoding);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoFailure, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(Errc::IoFailure, "short write to " + path.string());
}

}  // namespace prnu
