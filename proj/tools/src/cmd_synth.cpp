#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "commands.hpp"
#include "prnu/error.hpp"
#include "prnu/media_io.hpp"
#include "prnu/synthcam.hpp"

namespace fs = std::filesystem;

namespace prnu::cli {
namespace {

// Scene and frame-noise seeds are split off the model seed so that one
// --seed reproduces the whole corpus.
constexpr std::uint64_t kSceneStream = 0x5343454e45ULL;
constexpr std::uint64_t kNoiseStream = 0x4e4f495345ULL;

}  // namespace

void register_synth(CLI::App& app, SynthArgs& o) {
  app.add_option("--width", o.width, "Frame width")->check(CLI::PositiveNumber);
  app.add_option("--height", o.height, "Frame height")->check(CLI::PositiveNumber);
  app.add_option("--sigma-k", o.sigma_k, "PRNU standard deviation, in (0, 0.1]");
  app.add_option("--sigma1", o.sigma1, "Additive sensor noise standard deviation");
  app.add_option("--scene", o.scene, "flat or textured")
      ->check(CLI::IsMember({"flat", "textured"}));
  app.add_option("--luminance", o.luminance, "Flat scene level in [16, 240]");
  app.add_option("--cutoff", o.cutoff, "Textured scene cutoff wavelength (px)");
  app.add_option("--contrast", o.contrast, "Textured scene standard deviation");
  app.add_flag("--vary-scene", o.vary_scene, "Draw a new textured scene for every frame");
  app.add_option("--frames", o.frames, "Number of frames");
  app.add_option("--seed", o.seed, "Camera and corpus seed");
  app.add_option("--frame-seed", o.frame_seed, "Frame noise seed base (0: from --seed)");
  app.add_option("--format", o.format, "y4m or pgm (a directory of frames)")
      ->check(CLI::IsMember({"y4m", "pgm"}));
  app.add_option("-o,--out", o.out, "Output .y4m file or directory")->required();
  app.add_option("--truth", o.truth, "Truth fingerprint path");
}

int run_synth(const SynthArgs& o, const Common& c, std::ostream& out, std::ostream& err) {
  (void)c;
  const bool y4m = o.format == "y4m";
  const std::string truth =
      !o.truth.empty() ? o.truth : (y4m ? o.out + ".truth.fp" : (fs::path(o.out) / "truth.fp").string());
  const std::uint64_t frame_seed =
      o.frame_seed != 0 ? o.frame_seed : synth::derive_seed(o.seed, kNoiseStream);

  ConfigLog log;
  log.emplace_back("width", std::to_string(o.width));
  log.emplace_back("height", std::to_string(o.height));
  log.emplace_back("sigma-k", format_real(o.sigma_k));
  log.emplace_back("sigma1", format_real(o.sigma1));
  log.emplace_back("scene", o.scene);
  log.emplace_back("luminance", format_real(o.luminance));
  log.emplace_back("cutoff", format_real(o.cutoff));
  log.emplace_back("contrast", format_real(o.contrast));
  log.emplace_back("vary-scene", o.vary_scene ? "true" : "false");
  log.emplace_back("frames", std::to_string(o.frames));
  log.emplace_back("seed", std::to_string(o.seed));
  log.emplace_back("frame-seed", std::to_string(frame_seed));
  log.emplace_back("format", o.format);
  log.emplace_back("out", o.out);
  log.emplace_back("truth", truth);
  log_config(err, "synth", log);

  if (o.frames <= 0) fail(Errc::EmptyStream, "--frames must be positive");

  const auto model = synth::gen_model(o.width, o.height, o.sigma_k, o.sigma1, o.seed);
  const synth::SceneSpec spec = o.scene == "flat" ? synth::SceneSpec::flat(o.luminance)
                                                  : synth::SceneSpec::textured(o.cutoff, o.contrast);
  const std::uint64_t scene_seed = synth::derive_seed(o.seed, kSceneStream);
  const Plane fixed_scene = synth::render_scene(spec, o.width, o.height, scene_seed);
  synth::SceneSource scenes = [&](std::uint64_t i) {
    if (!o.vary_scene) return fixed_scene;
    return synth::render_scene(spec, o.width, o.height, synth::derive_seed(scene_seed, i));
  };
  const auto count = static_cast<std::uint64_t>(o.frames);

  if (y4m) {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) fail(Errc::IoFailure, "cannot create " + o.out);
    synth::write_y4m_corpus(model, scenes, count, file, {frame_seed});
    file.flush();
    if (!file) fail(Errc::IoFailure, "write failed: " + o.out);
  } else {
    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec) fail(Errc::IoFailure, "cannot create directory " + o.out);
    for (std::uint64_t i = 0; i < count; ++i) {
      const Plane frame = synth::render_frame(model, scenes(i), synth::derive_seed(frame_seed, i));
      char name[32];
      std::snprintf(name, sizeof name, "frame_%06llu.pgm", static_cast<unsigned long long>(i));
      write_netpbm_file(fs::path(o.out) / name, frame_from_plane(frame, i));
    }
  }
  save_fingerprint_file(synth::truth_fingerprint(model), truth);

  out << "frames=" << count << " width=" << o.width << " height=" << o.height
      << " truth=" << truth << '\n';
  return kExitOk;
}

}  // namespace prnu::cli
