#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "splithalf/score_matrix.hpp"
#include "splithalf/stats.hpp"

namespace splithalf {

enum class ReliabilityKind { Classical, SplitHalf };

std::string_view to_string(ReliabilityKind k);

struct TrueScoreRow {
  std::string examinee_id;
  std::int64_t observed = 0;
  double estimate = 0.0;
  double low = 0.0;
  double high = 0.0;
  /// |estimate - observed| = |X - X̄| (1 - r).
  double prediction_error = 0.0;
  /// Estimate outside [0, n].
  bool out_of_range = false;
};

/// Regression estimates T̂ = alpha1 + beta1 X with ±S_E intervals.
struct TrueScoreTable {
  std::vector<TrueScoreRow> rows;
  double alpha1 = 0.0;
  double beta1 = 0.0;
  double S_E = 0.0;
  /// (1 - r)² S_X²: mean squared regression prediction error.
  double prediction_error_variance = 0.0;
  /// S_E² minus the above, r (1 - r) S_X².
  double prediction_gap = 0.0;
  ReliabilityKind reliability_kind = ReliabilityKind::Classical;
};

/// `ids` may be empty (1-based indices are used) or hold one label per
/// examinee. Throws RangeError for r outside [0, 1] and ZeroVariance when
/// S_X² = 0.
TrueScoreTable estimate_true_scores(const ExamineeScores& x,
                                    const TestStats& stats, double r,
                                    ReliabilityKind kind,
                                    const std::vector<std::string>& ids = {});

struct EstimatorDifference {
  std::int64_t observed = 0;
  /// T̂_split-half - T̂_classical = (X - X̄)(r_gh - r_tt).
  double difference = 0.0;
  int sign = 0;
};

struct EstimatorComparison {
  std::vector<EstimatorDifference> rows;
  /// r_gh < r_tt: the usual ordering of the two estimators is reversed.
  bool reversed = false;
  std::vector<std::string> warnings;
};

EstimatorComparison compare_estimators(const ExamineeScores& x,
                                       const TestStats& stats, double r_tt,
                                       double r_gh);

/// 100 x (share of estimates <= t). Throws TooSmall on an empty table.
double percentile_rank(const TrueScoreTable& table, double t);

/// Examinee ids grouped by estimate bin [k w, (k + 1) w), keyed by k w.
std::map<double, std::vector<std::string>> estimate_bins(
    const TrueScoreTable& table, double width = 1.0);

}  // namespace splithalf
