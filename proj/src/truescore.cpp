#include "splithalf/truescore.hpp"

#include <cmath>

#include "splithalf/errors.hpp"

namespace splithalf {

std::string_view to_string(ReliabilityKind k) {
  return k == ReliabilityKind::Classical ? "classical" : "split_half";
}

TrueScoreTable estimate_true_scores(const ExamineeScores& x,
                                    const TestStats& stats, double r,
                                    ReliabilityKind kind,
                                    const std::vector<std::string>& ids) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw Error(ErrorKind::RangeError,
                "reliability " + std::to_string(r) + " outside [0, 1]");
  }
  if (!(stats.variance > 0.0)) {
    throw Error(ErrorKind::ZeroVariance,
                "true scores need a positive observed variance");
  }
  if (!ids.empty() && ids.size() != x.size()) {
    throw Error(ErrorKind::ShapeError, "examinee id count mismatch");
  }

  TrueScoreTable t;
  t.reliability_kind = kind;
  t.beta1 = r;
  t.alpha1 = stats.mean * (1.0 - r);
  t.S_E = std::sqrt((1.0 - r) * stats.variance);
  t.prediction_error_variance = (1.0 - r) * (1.0 - r) * stats.variance;
  t.prediction_gap = r * (1.0 - r) * stats.variance;

  const double max_score = static_cast<double>(stats.n);
  t.rows.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    TrueScoreRow row;
    row.examinee_id = ids.empty() ? std::to_string(i + 1) : ids[i];
    row.observed = x[i];
    const double X = static_cast<double>(x[i]);
    row.estimate = t.alpha1 + t.beta1 * X;
    row.low = row.estimate - t.S_E;
    row.high = row.estimate + t.S_E;
    row.prediction_error = std::abs(X - stats.mean) * (1.0 - r);
    row.out_of_range = row.estimate < 0.0 || row.estimate > max_score;
    t.rows.push_back(std::move(row));
  }
  return t;
}

EstimatorComparison compare_estimators(const ExamineeScores& x,
                                       const TestStats& stats, double r_tt,
                                       double r_gh) {
  EstimatorComparison c;
  c.reversed = r_gh < r_tt;
  if (c.reversed) {
    c.warnings.push_back(
        "split-half correlation is below the classical reliability; the "
        "estimator ordering is reversed");
  }
  const double dr = r_gh - r_tt;
  c.rows.reserve(x.size());
  for (auto X : x.totals) {
    const double dev = static_cast<double>(X) - stats.mean;
    EstimatorDifference d;
    d.observed = X;
    d.difference = dev * dr;
    d.sign = (d.difference > 0.0) - (d.difference < 0.0);
    c.rows.push_back(d);
  }
  return c;
}

double percentile_rank(const TrueScoreTable& table, double t) {
  if (table.rows.empty()) {
    throw Error(ErrorKind::TooSmall, "percentile rank of an empty table");
  }
  std::size_t count = 0;
  for (const auto& row : table.rows)
    if (row.estimate <= t) ++count;
  return 100.0 * static_cast<double>(count) /
         static_cast<double>(table.rows.size());
}

std::map<double, std::vector<std::string>> estimate_bins(
    const TrueScoreTable& table, double width) {
  if (!(width > 0.0)) {
    throw Error(ErrorKind::RangeError, "bin width must be positive");
  }
  std::map<double, std::vector<std::string>> bins;
  for (const auto& row : table.rows) {
    const double lower = std::floor(row.estimate / width) * width;
    bins[lower].push_back(row.examinee_id);
  }
  return bins;
}

}  // namespace splithalf
