#include <cstdio>
#include <ostream>

#include "commands.hpp"
#include "media_inputs.hpp"
#include "prnu/correlate.hpp"
#include "prnu/error.hpp"

namespace prnu::cli {
namespace {

// Top-left aligned: extra query pixels are dropped, missing ones are zero.
Plane fit_to(const Plane& query, std::uint32_t width, std::uint32_t height) {
  Plane out(width, height);
  const std::uint32_t w = std::min(width, query.width);
  const std::uint32_t h = std::min(height, query.height);
  for (std::uint32_t y = 0; y < h; ++y) {
    for (std::uint32_t x = 0; x < w; ++x) out.at(x, y) = query.at(x, y);
  }
  return out;
}

}  // namespace

void register_match(CLI::App& app, MatchArgs& o) {
  app.add_option("fingerprint", o.fingerprint, "Fingerprint file")->required();
  app.add_option("query", o.query, "Query media (first frame is used)")->required();
  app.add_flag("--blockwise", o.blockwise, "Score disjoint blocks and print a CSV");
  app.add_option("--block-size", o.block_size, "Block side in pixels")->check(CLI::PositiveNumber);
  app.add_option("--threshold", o.threshold, "PCE decision threshold (strict)");
  app.add_option("--exclusion", o.exclusion, "Half-width of the PCE peak exclusion")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--search-shift", o.search_shift,
               "Allow a query whose size differs from the fingerprint");
  app.add_flag("--raw-template", o.raw_template, "Correlate against K alone, not K*I");
  o.denoise.add_to(app);
}

int run_match(const MatchArgs& o, const Common& c, std::ostream& out, std::ostream& err) {
  ConfigLog log;
  log.emplace_back("fingerprint", o.fingerprint);
  log.emplace_back("query", o.query);
  log.emplace_back("blockwise", o.blockwise ? "true" : "false");
  log.emplace_back("block-size", std::to_string(o.block_size));
  log.emplace_back("threshold", format_real(o.threshold));
  log.emplace_back("exclusion", std::to_string(o.exclusion));
  log.emplace_back("search-shift", o.search_shift ? "true" : "false");
  log.emplace_back("raw-template", o.raw_template ? "true" : "false");
  o.denoise.log(log);
  log_config(err, "match", log);
  (void)c;

  const FingerprintEstimate fp = load_fingerprint_file(o.fingerprint);
  LumaPlane query = read_first_frame(o.query);
  if (query.width != fp.width || query.height != fp.height) {
    if (!o.search_shift) {
      fail(Errc::DimensionMismatch,
           o.query + ": " + std::to_string(query.width) + "x" + std::to_string(query.height) +
               " query vs " + std::to_string(fp.width) + "x" + std::to_string(fp.height) +
               " fingerprint (use --search-shift)");
    }
    query = fit_to(query, fp.width, fp.height);
  }

  const NoiseResidual residual = postprocess_residual(extract_residual(query, o.denoise.params()));
  prnu::MatchOptions options;
  options.threshold = o.threshold;
  options.exclusion = o.exclusion;
  options.template_kind = o.raw_template ? TemplateKind::Raw : TemplateKind::Multiplicative;

  bool matched = false;
  if (o.blockwise) {
    const BlockGrid grid = BlockGrid::cover(query.width, query.height, o.block_size);
    const MatchReport report = blockwise_match(fp, residual, query, grid, options);
    report.write_csv(out);
    matched = report.majority_decision();
  } else {
    const CorrelationResult r = correlate_aligned(residual, fp, query, options);
    char line[160];
    std::snprintf(line, sizeof line, "pce=%.4f ncc=%.4f dx=%d dy=%d decision=%s\n", r.pce,
                  r.ncc_peak, r.peak_shift.dx, r.peak_shift.dy, r.decision ? "match" : "no-match");
    out << line;
    matched = r.decision;
  }
  return matched ? kExitOk : kExitNoMatch;
}

}  // namespace prnu::cli
