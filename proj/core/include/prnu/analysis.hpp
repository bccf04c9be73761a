#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prnu/correlate.hpp"
#include "prnu/fingerprint.hpp"

namespace prnu {

// ---------------------------------------------------------------------------
// Analytic expressions

/// Pre-filter noise variance (sigma1^2) and content noise variance leaking
/// through the denoiser (sigma2^2).
struct NoiseBudget {
  double sigma1_sq = 0.0;
  double sigma2_sq = 0.0;

  void validate() const;
};

/// (sigma1^2 + sigma2^2) / sum I^2. Throws ZeroDenominator.
double variance_bound_conventional(const NoiseBudget& budget, double sum_i2);

/// (sigma1^2 / d + sigma2^2) / sum (I^SDA)^2.
double variance_bound_sda(const NoiseBudget& budget, std::uint32_t depth, double sum_i2_sda);

/// Upper bound on the images SDA at depth d needs to match n conventional
/// images: n (sigma1^2 + d sigma2^2) / (sigma1^2 + sigma2^2). Not rounded.
double required_images(double n, std::uint32_t depth, const NoiseBudget& budget);

// ---------------------------------------------------------------------------
// Detection statistics

struct LabeledDecision {
  bool positive = false;  // ground truth: same camera
  bool decision = false;
};

/// True positives over positives. Throws NoPositives.
double compute_tpr(std::span<const LabeledDecision> decisions);

struct LabeledScore {
  double score = 0.0;
  bool positive = false;
};

struct RocPoint {
  double threshold = 0.0;  // decision is score >= threshold
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) first, (1,1) last, FPR non-decreasing

  double auc() const;
  /// threshold,fpr,tpr
  void write_csv(std::ostream& out) const;
};

/// Sweeps the threshold over the sorted unique scores. Throws SingleClass.
RocCurve compute_roc(std::span<const LabeledScore> scores);

// ---------------------------------------------------------------------------
// Benchmark harness

struct BenchConfig {
  ExtractionSpec spec;
  std::string label;  // defaults to spec.label() when empty
};

/// A labelled query: a frame and its post-processed residual.
struct BenchQuery {
  LumaPlane frame;
  NoiseResidual residual;
  bool positive = true;
};

struct BenchCorpus {
  /// Opens a fresh training stream; called once per repetition and config.
  std::function<std::unique_ptr<FrameStream>()> open_training;
  std::vector<BenchQuery> queries;
};

struct BenchOptions {
  PipelineOptions pipeline;
  std::uint32_t repetitions = 1;
  std::uint32_t block_size = kDefaultBlockSize;
  MatchOptions match;
  /// Config whose timing is the speedup baseline; conventional when unset.
  std::optional<ExtractionSpec> baseline;
};

struct BenchRow {
  std::string label;
  ExtractionSpec spec;
  std::uint64_t frames = 0;
  std::uint64_t denoise_ops = 0;
  std::uint64_t dropped = 0;
  double seconds = 0.0;                // median over repetitions
  std::vector<double> rep_seconds;
  double speedup = 1.0;
  std::optional<double> mean_pce;      // over positive query tiles
  std::optional<double> mean_pce_ratio;  // mean |PCE / PCE of first row|
  std::optional<double> tpr;
  std::optional<double> fpr;
  std::vector<LabeledScore> scores;    // every query tile
};

struct BenchReport {
  std::vector<BenchRow> rows;

  /// label,mode,depth,frames,denoise_ops,dropped,seconds,speedup,mean_pce,
  /// mean_pce_ratio,tpr,fpr
  void write_csv(std::ostream& out) const;
};

BenchReport run_bench(std::span<const BenchConfig> configs, const BenchCorpus& corpus,
                      const BenchOptions& options = {});

/// Median of a non-empty list.
double median(std::vector<double> values);

// ---------------------------------------------------------------------------
// CSV helpers (RFC 4180 quoting, four decimals for reals)

std::string csv_field(const std::string& s);
std::string csv_real(double v);
std::string csv_optional(const std::optional<double>& v);

}  // namespace prnu
