#include "prnu_cli/cli.hpp"

#include <cstdio>
#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <thread>

#include "commands.hpp"
#include "prnu/error.hpp"

namespace prnu::cli {

void log_config(std::ostream& err, const std::string& command, const ConfigLog& entries) {
  err << "# " << command;
  for (const auto& [k, v] : entries) err << ' ' << k << '=' << v;
  err << '\n';
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void DenoiseFlags::add_to(CLI::App& app) {
  app.add_option("--sigma0-sq", sigma0_sq, "Denoiser noise variance (intensity^2)");
  app.add_option("--levels", levels, "Wavelet decomposition levels");
  app.add_option("--windows", windows, "Local variance window sizes")->delimiter(',');
  app.add_flag("--wiener-dft", wiener_dft, "Wiener-filter residuals in the DFT domain");
}

DenoiseParams DenoiseFlags::params() const {
  DenoiseParams p;
  p.sigma0_sq = sigma0_sq;
  p.wavelet_levels = levels;
  p.window_sizes = windows;
  p.wiener_dft = wiener_dft;
  p.validate();
  return p;
}

void DenoiseFlags::log(ConfigLog& log) const {
  log.emplace_back("sigma0-sq", format_real(sigma0_sq));
  log.emplace_back("levels", std::to_string(levels));
  log.emplace_back("windows", join_ints(windows));
  log.emplace_back("wiener-dft", wiener_dft ? "true" : "false");
}

namespace {

unsigned default_jobs() {
  if (const char* env = std::getenv("PRNU_SDA_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Values from the config file fill options the command line left unset.
void apply_config(CLI::App& command, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    CLI::Option* opt = command.get_option_no_throw("--" + key);
    if (opt == nullptr && command.get_parent() != nullptr) {
      opt = command.get_parent()->get_option_no_throw("--" + key);
    }
    if (opt == nullptr) fail(Errc::BadParameter, "unknown config key '" + key + "'");
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"PRNU camera fingerprints with spatial-domain averaging", "prnu_sda"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Common common;
  common.jobs = default_jobs();
  app.add_option("--jobs,-j", common.jobs, "Denoising worker threads (env PRNU_SDA_JOBS)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--verbose,-v", common.verbose, "Log per-repetition details");
  app.add_option("--config", common.config_path, "key=value file; flags override it");

  ExtractArgs extract;
  MatchArgs match;
  SynthArgs synth;
  BenchArgs bench;
  RocArgs roc;
  auto* extract_cmd = app.add_subcommand("extract", "Build a fingerprint from frames");
  auto* match_cmd = app.add_subcommand("match", "Match a query against a fingerprint");
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic camera corpus");
  auto* bench_cmd = app.add_subcommand("bench", "Time and score extraction depths");
  auto* roc_cmd = app.add_subcommand("roc", "ROC curve from labelled score CSVs");
  register_extract(*extract_cmd, extract);
  register_match(*match_cmd, match);
  register_synth(*synth_cmd, synth);
  register_bench(*bench_cmd, bench);
  register_roc(*roc_cmd, roc);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!common.config_path.empty()) {
      const auto kv = load_config_file(common.config_path);
      apply_config(*active, kv);
    }
    if (active == extract_cmd) return run_extract(extract, common, out, err);
    if (active == match_cmd) return run_match(match, common, out, err);
    if (active == synth_cmd) return run_synth(synth, common, out, err);
    if (active == bench_cmd) return run_bench(bench, common, out, err);
    if (active == roc_cmd) return run_roc(roc, common, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace prnu::cli
