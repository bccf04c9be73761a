#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prnu/plane.hpp"

namespace prnu {

/// Decoded raster, interleaved when channels == 3. Values lie in [0, 255].
struct FrameBuffer {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint8_t channels = 1;
  std::vector<float> data;
  std::uint64_t source_index = 0;

  friend bool operator==(const FrameBuffer&, const FrameBuffer&) = default;
};

// ---------------------------------------------------------------------------
// Netpbm (P2 / P3 / P5 / P6)

FrameBuffer decode_netpbm(std::span<const std::uint8_t> bytes);

enum class NetpbmEncoding { Ascii, Binary };

/// Encodes with maxval 255; samples are rounded to the nearest integer and
/// clamped to [0, 255].
std::vector<std::uint8_t> encode_netpbm(const FrameBuffer& frame,
                                        NetpbmEncoding encoding = NetpbmEncoding::Binary);

FrameBuffer read_netpbm_file(const std::filesystem::path& path);
void write_netpbm_file(const std::filesystem::path& path, const FrameBuffer& frame,
                       NetpbmEncoding encoding = NetpbmEncoding::Binary);

// ---------------------------------------------------------------------------
// Frame streams

enum class Colorspace { Gray, C420, C420jpeg, C420mpeg2, C444 };

const char* colorspace_tag(Colorspace cs) noexcept;

/// Pull-based, single-consumer source of frames sharing one geometry.
/// next() returns std::nullopt once the stream is exhausted; that state is
/// terminal and repeated calls keep returning it.
class FrameStream {
 public:
  virtual ~FrameStream() = default;

  virtual std::optional<FrameBuffer> next() = 0;

  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t height() const noexcept { return height_; }
  Colorspace colorspace() const noexcept { return colorspace_; }

 protected:
  std::uint32_t width_ = 0;
  std::uint32_t height_ = 0;
  Colorspace colorspace_ = Colorspace::Gray;
};

/// Opens a YUV4MPEG2 stream. Only the luma plane of each frame is decoded;
/// chroma bytes are skipped. Tags other than W, H and C are kept in
/// raw_tags() and otherwise ignored.
class Y4mStream final : public FrameStream {
 public:
  explicit Y4mStream(std::unique_ptr<std::istream> in);
  ~Y4mStream() override;

  std::optional<FrameBuffer> next() override;

  const std::vector<std::string>& raw_tags() const noexcept { return tags_; }
  std::size_t chroma_bytes() const noexcept { return chroma_bytes_; }

 private:
  std::unique_ptr<std::istream> in_;
  std::vector<std::string> tags_;
  std::size_t chroma_bytes_ = 0;
  std::uint64_t index_ = 0;
  bool done_ = false;
};

std::unique_ptr<FrameStream> open_y4m(std::unique_ptr<std::istream> in);
std::unique_ptr<FrameStream> open_y4m_file(const std::filesystem::path& path);

/// Streams a list of netpbm files in the given order. Every file must share
/// the geometry of the first; a mismatch raises DimensionMismatch naming the
/// offending path.
class NetpbmListStream final : public FrameStream {
 public:
  explicit NetpbmListStream(std::vector<std::filesystem::path> files);

  std::optional<FrameBuffer> next() override;

 private:
  std::vector<std::filesystem::path> files_;
  std::size_t cursor_ = 0;
  std::optional<FrameBuffer> first_;
  std::uint8_t channels_ = 1;
};

/// In-memory stream over already decoded planes (tests, synthetic corpora).
class PlaneListStream final : public FrameStream {
 public:
  explicit PlaneListStream(std::vector<Plane> planes);

  std::optional<FrameBuffer> next() override;

 private:
  std::vector<Plane> planes_;
  std::size_t cursor_ = 0;
};

/// Opens a path as a stream: `.y4m` files as YUV4MPEG2, anything else as a
/// single netpbm file.
std::unique_ptr<FrameStream> open_media(const std::filesystem::path& path);

/// Writes a YUV4MPEG2 stream from luma planes. Chroma is neutral (128).
class Y4mWriter {
 public:
  Y4mWriter(std::ostream& out, std::uint32_t width, std::uint32_t height,
            Colorspace cs = Colorspace::C420, std::string frame_rate = "30:1");

  void write_frame(const Plane& luma);
  std::uint64_t frames_written() const noexcept { return frames_; }

 private:
  std::ostream& out_;
  std::uint32_t width_;
  std::uint32_t height_;
  std::size_t chroma_bytes_;
  std::uint64_t frames_ = 0;
  std::vector<std::uint8_t> scratch_;
};

/// Quantizes an intensity to an 8-bit sample (round half away from zero,
/// clamped to [0, 255]).
std::uint8_t quantize_u8(float v) noexcept;

// ---------------------------------------------------------------------------
// Luma

/// BT.601 luma for 3-channel frames; single-channel frames pass through.
LumaPlane to_luma(const FrameBuffer& frame);

FrameBuffer frame_from_plane(const Plane& plane, std::uint64_t source_index = 0);

}  // namespace prnu
