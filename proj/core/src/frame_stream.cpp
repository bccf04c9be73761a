#include <string>

#include "prnu/error.hpp"
#include "prnu/media_io.hpp"

namespace prnu {

NetpbmListStream::NetpbmListStream(std::vector<std::filesystem::path> files)
    : files_(std::move(files)) {
  if (files_.empty()) return;
  first_ = read_netpbm_file(files_.front());
  width_ = first_->width;
  height_ = first_->height;
  channels_ = first_->channels;
}

std::optional<FrameBuffer> NetpbmListStream::next() {
  if (cursor_ >= files_.size()) return std::nullopt;
  FrameBuffer frame;
  if (cursor_ == 0 && first_) {
    frame = std::move(*first_);
    first_.reset();
  } else {
    frame = read_netpbm_file(files_[cursor_]);
  }
  if (frame.width != width_ || frame.height != height_) {
    fail(Errc::DimensionMismatch,
         files_[cursor_].string() + ": " + std::to_string(frame.width) + "x" +
             std::to_string(frame.height) + " differs from stream geometry " +
             std::to_string(width_) + "x" + std::to_string(height_));
  }
  frame.source_index = cursor_++;
  return frame;
}

PlaneListStream::PlaneListStream(std::vector<Plane> planes) : planes_(std::move(planes)) {
  if (!planes_.empty()) {
    width_ = planes_.front().width;
    height_ = planes_.front().height;
  }
}

std::optional<FrameBuffer> PlaneListStream::next() {
  if (cursor_ >= planes_.size()) return std::nullopt;
  const Plane& p = planes_[cursor_];
  if (p.width != width_ || p.height != height_) {
    fail(Errc::DimensionMismatch, "plane " + std::to_string(cursor_) + " geometry differs");
  }
  FrameBuffer frame = frame_from_plane(p, cursor_);
  ++cursor_;
  return frame;
}

std::unique_ptr<FrameStream> open_media(const std::filesystem::path& path) {
  if (path.extension() == ".y4m") return open_y4m_file(path);
  return std::make_unique<NetpbmListStream>(std::vector<std::filesystem::path>{path});
}

}  // namespace prnu
