#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "prnu/correlate.hpp"
#include "prnu/denoise.hpp"
#include "prnu/fingerprint.hpp"
#include "prnu_cli/cli.hpp"

namespace prnu::cli {

struct Common {
  unsigned jobs = 1;
  bool verbose = false;
  std::string config_path;
};

using ConfigLog = std::vector<std::pair<std::string, std::string>>;

/// Writes the fully resolved configuration of a run to `err`.
void log_config(std::ostream& err, const std::string& command, const ConfigLog& entries);

/// Denoiser flags shared by extract, match and bench.
struct DenoiseFlags {
  double sigma0_sq = 9.0;
  int levels = 4;
  std::vector<int> windows{3, 5, 7, 9};
  bool wiener_dft = false;

  void add_to(CLI::App& app);
  DenoiseParams params() const;
  void log(ConfigLog& log) const;
};

std::string join_ints(const std::vector<int>& v);
std::string format_real(double v);

struct ExtractArgs {
  std::vector<std::string> inputs;
  std::string mode = "sda";
  std::uint32_t depth = 30;
  std::uint32_t stride = 30;
  std::string out;
  DenoiseFlags denoise;
};
void register_extract(CLI::App& app, ExtractArgs& o);
int run_extract(const ExtractArgs& o, const Common& c, std::ostream& out, std::ostream& err);

struct MatchArgs {
  std::string fingerprint;
  std::string query;
  std::uint64_t frame = 0;
  bool blockwise = false;
  std::uint32_t block_size = kDefaultBlockSize;
  double threshold = kDefaultPceThreshold;
  int exclusion = kDefaultPceExclusion;
  bool search_shift = false;
  bool raw_template = false;
  DenoiseFlags denoise;
};
void register_match(CLI::App& app, MatchArgs& o);
int run_match(const MatchArgs& o, const Common& c, std::ostream& out, std::ostream& err);

struct SynthArgs {
  std::uint32_t width = 256;
  std::uint32_t height = 256;
  double sigma_k = 0.02;
  double sigma1 = 3.0;
  std::string scene = "flat";
  double luminance = 128.0;
  double cutoff = 8.0;
  double contrast = 60.0;
  bool vary_scene = false;
  std::int64_t frames = 100;
  std::uint64_t seed = 1;
  std::uint64_t frame_seed = 0;  // 0: derived from seed
  std::string format = "y4m";
  std::string out;
  std::string truth;
};
void register_synth(CLI::App& app, SynthArgs& o);
int run_synth(const SynthArgs& o, const Common& c, std::ostream& out, std::ostream& err);

struct BenchArgs {
  std::string corpus;
  std::string depths = "1,10,50";
  std::uint32_t repetitions = 1;
  std::vector<std::string> positives;
  std::vector<std::string> negatives;
  std::uint32_t block_size = 0;
  double threshold = kDefaultPceThreshold;
  std::uint32_t stride = 0;  // 0: no stride row
  DenoiseFlags denoise;
};
void register_bench(CLI::App& app, BenchArgs& o);
int run_bench(const BenchArgs& o, const Common& c, std::ostream& out, std::ostream& err);

struct RocArgs {
  std::string directory;
  std::string out;
};
void register_roc(CLI::App& app, RocArgs& o);
int run_roc(const RocArgs& o, const Common& c, std::ostream& out, std::ostream& err);

}  // namespace prnu::cli
