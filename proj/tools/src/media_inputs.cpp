#include "media_inputs.hpp"

#include <algorithm>
#include <filesystem>

#include "prnu/error.hpp"

namespace fs = std::filesystem;

namespace prnu::cli {
namespace {

bool is_netpbm(const fs::path& p) {
  const auto ext = p.extension().string();
  return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

}  // namespace

std::unique_ptr<FrameStream> open_inputs(const std::vector<std::string>& inputs) {
  if (inputs.empty()) fail(Errc::BadParameter, "no input files");
  if (inputs.size() == 1) {
    const fs::path path = inputs.front();
    if (fs::is_directory(path)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && is_netpbm(entry.path())) files.push_back(entry.path());
      }
      if (files.empty()) fail(Errc::EmptyStream, path.string() + ": no netpbm files");
      std::sort(files.begin(), files.end());
      return std::make_unique<NetpbmListStream>(std::move(files));
    }
    try {
      return open_media(path);
    } catch (const Error& e) {
      if (e.detail().find(path.string()) != std::string::npos) throw;
      throw e.with_context(path.string());
    }
  }
  std::vector<fs::path> files(inputs.begin(), inputs.end());
  for (const auto& f : files) {
    if (f.extension() == ".y4m") {
      fail(Errc::BadParameter, f.string() + ": y4m inputs must be given alone");
    }
  }
  return std::make_unique<NetpbmListStream>(std::move(files));
}

LumaPlane read_first_frame(const std::string& path) {
  try {
    auto stream = open_media(path);
    auto frame = stream->next();
    if (!frame) fail(Errc::EmptyStream, "no frames");
    return to_luma(*frame);
  } catch (const Error& e) {
    if (e.detail().find(path) != std::string::npos) throw;
    throw e.with_context(path);
  }
}

}  // namespace prnu::cli
