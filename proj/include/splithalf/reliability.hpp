#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splithalf/score_matrix.hpp"
#include "splithalf/splitter.hpp"
#include "splithalf/stats.hpp"

namespace splithalf {

/// Per-examinee scores on the two halves of a split.
struct SubTestScores {
  std::vector<std::int64_t> g;
  std::vector<std::int64_t> h;

  std::size_t examinees() const noexcept { return g.size(); }
};

SubTestScores sub_test_scores(const ScoreMatrix& m, const Assignment& a);

/// Total score over the paired items only (g + h).
ExamineeScores paired_totals(const SubTestScores& s);

/// ‖X_g - X_h‖² / N: error variance of the whole test when g and h are
/// parallel (their error vectors are orthogonal).
double error_variance(const SubTestScores& s);

/// Pearson correlation of the two halves; empty when either half has zero
/// variance.
std::optional<double> split_half_correlation(const SubTestScores& s);

struct FTest {
  /// Larger over smaller sample variance.
  double f_stat = 0.0;
  /// Two-sided, dof (N-1, N-1).
  double p_value = 1.0;
  std::size_t dof = 0;
};

/// Two-sided p-value of a variance ratio `f` >= 1 under F(dof, dof).
double f_two_sided_p(double f, std::size_t dof);

/// Equality of the observed sub-test variances. Empty when the smaller
/// variance is zero. Throws TooSmall for N < 3.
std::optional<FTest> f_test_equal_variance(const SubTestScores& s);

struct TrueScoreGeometry {
  double S_T_sq = 0.0;
  double norm_T = 0.0;
  double cos_theta_T = 0.0;
  /// ‖T‖² sin²θ_T / N, which must reproduce S_T_sq.
  double S_T_sq_from_angle = 0.0;
};

/// True-score vector geometry given X̄ = T̄. Empty when r_tt lies outside
/// [0, 1] or the score vector is zero.
std::optional<TrueScoreGeometry> true_score_geometry(const TestStats& stats,
                                                     double r_tt);

struct ReliabilityReport {
  double error_variance = 0.0;
  /// 1 - (‖X_g‖² + ‖X_h‖² - 2 Σ g h) / (N S_X²).
  double r_tt = 0.0;
  /// Shortcut assuming ‖X_g‖ = ‖X_h‖: 1 - (2‖X_g‖² - 2 Σ g h) / (N S_X²).
  double r_tt_equal_norm = 0.0;
  std::optional<double> r_gh;
  /// √r_tt, empty when r_tt < 0.
  std::optional<double> r_XT;
  double S_T_sq = 0.0;
  double S_X_sq = 0.0;
  std::optional<FTest> f_test;
  std::optional<TrueScoreGeometry> geometry;
  double mean_g = 0.0;
  double mean_h = 0.0;
  double variance_g = 0.0;
  double variance_h = 0.0;
  std::vector<std::string> warnings;
};

/// Classical reliability from one administration. `stats` must describe the
/// paired total g + h. Throws ZeroVariance when S_X² = 0. Negative r_tt is
/// reported as-is with a warning.
ReliabilityReport classical_reliability(const SubTestScores& s,
                                        const TestStats& stats);

/// Whole pipeline for one score matrix.
struct TestAnalysis {
  SplitResult split;
  SubTestScores halves;
  ExamineeScores totals;
  TestStats stats;
  ReliabilityReport reliability;
};

TestAnalysis analyze_test(const ScoreMatrix& m,
                          const SplitOptions& options = {});

}  // namespace splithalf
