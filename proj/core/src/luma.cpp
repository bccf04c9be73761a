#include <algorithm>
#include <string>

#include "prnu/error.hpp"
#include "prnu/media_io.hpp"

namespace prnu {

LumaPlane to_luma(const FrameBuffer& frame) {
  if (frame.channels == 1) {
    Plane p;
    p.width = frame.width;
    p.height = frame.height;
    p.data = frame.data;
    return p;
  }
  if (frame.channels != 3) {
    fail(Errc::UnsupportedChannelCount, std::to_string(frame.channels) + " channels");
  }
  Plane p(frame.width, frame.height);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = frame.data[3 * i];
    const double g = frame.data[3 * i + 1];
    const double b = frame.data[3 * i + 2];
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    p.data[i] = static_cast<float>(std::clamp(y, 0.0, 255.0));
  }
  return p;
}

FrameBuffer frame_from_plane(const Plane& plane, std::uint64_t source_index) {
  FrameBuffer f;
  f.width = plane.width;
  f.height = plane.height;
  f.channels = 1;
  f.data = plane.data;
  f.source_index = source_index;
  return f;
}

}  // namespace prnu
