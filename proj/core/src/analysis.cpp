#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "prnu/analysis.hpp"
#include "prnu/error.hpp"

namespace prnu {

void NoiseBudget::validate() const {
  if (!(sigma1_sq >= 0.0) || !(sigma2_sq >= 0.0) || !std::isfinite(sigma1_sq) ||
      !std::isfinite(sigma2_sq)) {
    fail(Errc::BadParameter, "noise variances must be finite and >= 0");
  }
  if (sigma1_sq == 0.0 && sigma2_sq == 0.0) {
    fail(Errc::BadParameter, "noise budget cannot be zero on both terms");
  }
}

double variance_bound_conventional(const NoiseBudget& budget, double sum_i2) {
  budget.validate();
  if (!(sum_i2 > 0.0)) fail(Errc::ZeroDenominator, "sum of squared intensities must be > 0");
  return (budget.sigma1_sq + budget.sigma2_sq) / sum_i2;
}

double variance_bound_sda(const NoiseBudget& budget, std::uint32_t depth, double sum_i2_sda) {
  budget.validate();
  if (depth == 0) fail(Errc::BadParameter, "depth must be >= 1");
  if (!(sum_i2_sda > 0.0)) fail(Errc::ZeroDenominator, "sum of squared intensities must be > 0");
  return (budget.sigma1_sq / depth + budget.sigma2_sq) / sum_i2_sda;
}

double required_images(double n, std::uint32_t depth, const NoiseBudget& budget) {
  budget.validate();
  if (!(n >= 1.0) || !std::isfinite(n)) fail(Errc::BadParameter, "n must be >= 1");
  if (depth == 0) fail(Errc::BadParameter, "depth must be >= 1");
  // Numerator first: at d == 1 or sigma2 == 0 the quotient is exactly n.
  const double s1 = budget.sigma1_sq, s2 = budget.sigma2_sq;
  return n * (s1 + static_cast<double>(depth) * s2) / (s1 + s2);
}

double compute_tpr(std::span<const LabeledDecision> decisions) {
  std::size_t positives = 0, hits = 0;
  for (const auto& d : decisions) {
    if (!d.positive) continue;
    ++positives;
    if (d.decision) ++hits;
  }
  if (positives == 0) fail(Errc::NoPositives, "no positive-labelled decisions");
  return static_cast<double>(hits) / static_cast<double>(positives);
}

RocCurve compute_roc(std::span<const LabeledScore> scores) {
  std::size_t pos = 0, neg = 0;
  for (const auto& s : scores) (s.positive ? pos : neg)++;
  if (pos == 0 || neg == 0) fail(Errc::SingleClass, "ROC needs both labels");

  std::vector<LabeledScore> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const LabeledScore& a, const LabeledScore& b) { return a.score > b.score; });

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double t = sorted[i].score;
    // Consume every sample tied at this score before emitting a point.
    while (i < sorted.size() && sorted[i].score == t) {
      (sorted[i].positive ? tp : fp)++;
      ++i;
    }
    curve.points.push_back(
        {t, static_cast<double>(fp) / static_cast<double>(neg),
         static_cast<double>(tp) / static_cast<double>(pos)});
  }
  return curve;
}

double RocCurve::auc() const {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += (points[i].fpr - points[i - 1].fpr) * 0.5 * (points[i].tpr + points[i - 1].tpr);
  }
  return area;
}

void RocCurve::write_csv(std::ostream& out) const {
  out << "threshold,fpr,tpr\n";
  for (const auto& p : points) {
    out << (std::isinf(p.threshold) ? std::string("inf") : csv_real(p.threshold)) << ','
        << csv_real(p.fpr) << ',' << csv_real(p.tpr) << '\n';
  }
}

double median(std::vector<double> values) {
  if (values.empty()) fail(Errc::BadParameter, "median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string csv_optional(const std::optional<double>& v) { return v ? csv_real(*v) : ""; }

}  // namespace prnu
