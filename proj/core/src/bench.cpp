#include <chrono>
#include <cmath>
#include <ostream>

#include "prnu/analysis.hpp"
#include "prnu/error.hpp"

namespace prnu {
namespace {

struct TimedRun {
  FingerprintEstimate fp;
  ExtractionStats stats;
  std::vector<double> seconds;
};

TimedRun timed_extraction(const ExtractionSpec& spec, const BenchCorpus& corpus,
                          const BenchOptions& options) {
  TimedRun run;
  const std::uint32_t reps = std::max(1u, options.repetitions);
  for (std::uint32_t r = 0; r < reps; ++r) {
    auto stream = corpus.open_training();
    if (!stream) fail(Errc::IoFailure, "training corpus could not be opened");
    const auto t0 = std::chrono::steady_clock::now();
    run.fp = extract_fingerprint(*stream, spec, options.pipeline, &run.stats);
    run.seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return run;
}

}  // namespace

BenchReport run_bench(std::span<const BenchConfig> configs, const BenchCorpus& corpus,
                      const BenchOptions& options) {
  if (!corpus.open_training) fail(Errc::BadParameter, "bench corpus has no training source");
  const ExtractionSpec baseline = options.baseline.value_or(ExtractionSpec::conventional());

  BenchReport report;
  std::optional<double> baseline_seconds;
  std::vector<std::vector<double>> positive_pce;  // per row, per positive tile

  for (const BenchConfig& config : configs) {
    TimedRun run = timed_extraction(config.spec, corpus, options);

    BenchRow row;
    row.spec = config.spec;
    row.label = config.label.empty() ? config.spec.label() : config.label;
    row.frames = run.stats.frames_used;
    row.denoise_ops = run.stats.denoise_ops;
    row.dropped = run.stats.frames_dropped;
    row.rep_seconds = run.seconds;
    row.seconds = median(run.seconds);
    if (config.spec == baseline && !baseline_seconds) baseline_seconds = row.seconds;

    std::vector<LabeledDecision> decisions;
    std::vector<double> pos_pce;
    std::size_t negatives = 0, false_hits = 0;
    for (const BenchQuery& q : corpus.queries) {
      const BlockGrid grid = options.block_size == 0
                                 ? BlockGrid::cover(q.frame.width, q.frame.height,
                                                    std::min(q.frame.width, q.frame.height))
                                 : BlockGrid::cover(q.frame.width, q.frame.height, options.block_size);
      const MatchReport m = blockwise_match(run.fp, q.residual, q.frame, grid, options.match);
      for (const TileResult& t : m.tiles) {
        row.scores.push_back({t.result.pce, q.positive});
        decisions.push_back({q.positive, t.result.decision});
        if (q.positive) {
          pos_pce.push_back(t.result.pce);
        } else {
          ++negatives;
          if (t.result.decision) ++false_hits;
        }
      }
    }
    if (!pos_pce.empty()) {
      double s = 0.0;
      for (double v : pos_pce) s += v;
      row.mean_pce = s / static_cast<double>(pos_pce.size());
      row.tpr = compute_tpr(decisions);
    }
    if (negatives > 0) row.fpr = static_cast<double>(false_hits) / static_cast<double>(negatives);
    positive_pce.push_back(std::move(pos_pce));
    report.rows.push_back(std::move(row));
  }

  if (!baseline_seconds) {
    baseline_seconds = median(timed_extraction(baseline, corpus, options).seconds);
  }
  for (auto& row : report.rows) {
    row.speedup = row.seconds > 0.0 ? *baseline_seconds / row.seconds : 0.0;
  }

  // Per-tile PCE ratios against the first configuration.
  if (!report.rows.empty() && !positive_pce.front().empty()) {
    const auto& ref = positive_pce.front();
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
      double s = 0.0;
      std::size_t n = 0;
      for (std::size_t i = 0; i < ref.size() && i < positive_pce[r].size(); ++i) {
        if (ref[i] == 0.0) continue;
        s += std::abs(positive_pce[r][i] / ref[i]);
        ++n;
      }
      if (n > 0) report.rows[r].mean_pce_ratio = s / static_cast<double>(n);
    }
  }
  return report;
}

void BenchReport::write_csv(std::ostream& out) const {
  out << "label,mode,depth,frames,denoise_ops,dropped,seconds,speedup,mean_pce,mean_pce_ratio,"
         "tpr,fpr\n";
  for (const auto& r : rows) {
    out << csv_field(r.label) << ',' << mode_name(r.spec.mode) << ',' << r.spec.parameter << ','
        << r.frames << ',' << r.denoise_ops << ',' << r.dropped << ',' << csv_real(r.seconds)
        << ',' << csv_real(r.speedup) << ',' << csv_optional(r.mean_pce) << ','
        << csv_optional(r.mean_pce_ratio) << ',' << csv_optional(r.tpr) << ','
        << csv_optional(r.fpr) << '\n';
  }
}

}  // namespace prnu
