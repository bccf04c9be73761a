#pragma once

#include <memory>
#include <string>
#include <vector>

#include "prnu/media_io.hpp"

namespace prnu::cli {

/// A single .y4m file, a single netpbm file, a directory of netpbm files
/// (sorted by name) or an explicit netpbm list.
std::unique_ptr<FrameStream> open_inputs(const std::vector<std::string>& inputs);

/// First frame of a media file as luma.
LumaPlane read_first_frame(const std::string& path);

}  // namespace prnu::cli
