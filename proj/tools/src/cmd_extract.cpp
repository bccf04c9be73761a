#include <ostream>

#include "commands.hpp"
#include "media_inputs.hpp"
#include "prnu/error.hpp"
#include "prnu/fingerprint.hpp"

namespace prnu::cli {

void register_extract(CLI::App& app, ExtractArgs& o) {
  app.add_option("inputs", o.inputs, "A .y4m file, a netpbm directory, or netpbm files")
      ->required();
  app.add_option("--mode", o.mode, "conventional, sda or stride")
      ->check(CLI::IsMember({"conventional", "sda", "stride"}));
  app.add_option("--depth", o.depth, "SDA group size")->check(CLI::PositiveNumber);
  app.add_option("--stride", o.stride, "Keep every k-th frame in stride mode")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--out", o.out, "Fingerprint output path")->required();
  o.denoise.add_to(app);
}

int run_extract(const ExtractArgs& o, const Common& c, std::ostream& out, std::ostream& err) {
  ExtractionSpec spec;
  if (o.mode == "sda") {
    spec = ExtractionSpec::sda(o.depth);
  } else if (o.mode == "stride") {
    spec = ExtractionSpec::stride(o.stride);
  }

  PipelineOptions options;
  options.denoise = o.denoise.params();
  options.jobs = c.jobs;

  ConfigLog log;
  std::string inputs;
  for (const auto& in : o.inputs) inputs += (inputs.empty() ? "" : ",") + in;
  log.emplace_back("inputs", inputs);
  log.emplace_back("mode", o.mode);
  log.emplace_back("depth", std::to_string(o.depth));
  log.emplace_back("stride", std::to_string(o.stride));
  log.emplace_back("out", o.out);
  o.denoise.log(log);
  log.emplace_back("jobs", std::to_string(c.jobs));
  log_config(err, "extract", log);

  auto stream = open_inputs(o.inputs);
  ExtractionStats stats;
  FingerprintEstimate fp;
  try {
    fp = extract_fingerprint(*stream, spec, options, &stats);
  } catch (const Error& e) {
    if (o.inputs.size() != 1 || e.detail().find(o.inputs.front()) != std::string::npos) throw;
    throw e.with_context(o.inputs.front());
  }
  save_fingerprint_file(fp, o.out);

  out << "frames=" << stats.frames_read << " used=" << stats.frames_used
      << " dropped=" << stats.frames_dropped << " denoise_ops=" << stats.denoise_ops
      << " elapsed=" << format_real(stats.elapsed_seconds) << '\n';
  return kExitOk;
}

}  // namespace prnu::cli
