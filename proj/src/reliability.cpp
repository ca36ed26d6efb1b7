#include "splithalf/reliability.hpp"

#include <algorithm>
#include <boost/math/distributions/fisher_f.hpp>
#include <cmath>

#include "splithalf/errors.hpp"

namespace splithalf {

SubTestScores sub_test_scores(const ScoreMatrix& m, const Assignment& a) {
  return {examinee_totals(m, a.g_items).totals,
          examinee_totals(m, a.h_items).totals};
}

ExamineeScores paired_totals(const SubTestScores& s) {
  ExamineeScores x{std::vector<std::int64_t>(s.examinees())};
  for (std::size_t i = 0; i < s.examinees(); ++i) x.totals[i] = s.g[i] + s.h[i];
  return x;
}

double error_variance(const SubTestScores& s) {
  std::int64_t ss = 0;
  for (std::size_t i = 0; i < s.examinees(); ++i) {
    const auto d = s.g[i] - s.h[i];
    ss += d * d;
  }
  return static_cast<double>(ss) / static_cast<double>(s.examinees());
}

std::optional<double> split_half_correlation(const SubTestScores& s) {
  const double mg = mean_of(s.g);
  const double mh = mean_of(s.h);
  double sgg = 0.0, shh = 0.0, sgh = 0.0;
  for (std::size_t i = 0; i < s.examinees(); ++i) {
    const double dg = static_cast<double>(s.g[i]) - mg;
    const double dh = static_cast<double>(s.h[i]) - mh;
    sgg += dg * dg;
    shh += dh * dh;
    sgh += dg * dh;
  }
  if (sgg <= 0.0 || shh <= 0.0) return std::nullopt;
  return std::clamp(sgh / std::sqrt(sgg * shh), -1.0, 1.0);
}

double f_two_sided_p(double f, std::size_t dof) {
  const boost::math::fisher_f_distribution<double> dist(
      static_cast<double>(dof), static_cast<double>(dof));
  return std::min(1.0, 2.0 * boost::math::cdf(complement(dist, f)));
}

std::optional<FTest> f_test_equal_variance(const SubTestScores& s) {
  const std::size_t N = s.examinees();
  if (N < 3) {
    throw Error(ErrorKind::TooSmall, "F-test needs at least 3 examinees");
  }
  const double vg = sample_variance(s.g);
  const double vh = sample_variance(s.h);
  const double hi = std::max(vg, vh);
  const double lo = std::min(vg, vh);
  if (lo <= 0.0) return std::nullopt;

  FTest t;
  t.dof = N - 1;
  t.f_stat = hi / lo;
  t.p_value = f_two_sided_p(t.f_stat, t.dof);
  return t;
}

std::optional<TrueScoreGeometry> true_score_geometry(const TestStats& stats,
                                                     double r_tt) {
  if (!(r_tt >= 0.0 && r_tt <= 1.0) || !stats.angle_defined) return std::nullopt;
  const double N = static_cast<double>(stats.N);
  TrueScoreGeometry g;
  g.S_T_sq = r_tt * stats.variance;
  g.norm_T = std::sqrt(N * (stats.mean * stats.mean + g.S_T_sq));
  if (g.norm_T <= 0.0) return std::nullopt;
  g.cos_theta_T = std::min(1.0, stats.norm_X / g.norm_T * stats.cos_theta_X);
  g.S_T_sq_from_angle =
      g.norm_T * g.norm_T * (1.0 - g.cos_theta_T * g.cos_theta_T) / N;
  return g;
}

ReliabilityReport classical_reliability(const SubTestScores& s,
                                        const TestStats& stats) {
  if (!(stats.variance > 0.0)) {
    throw Error(ErrorKind::ZeroVariance,
                "observed test variance is zero; reliability is undefined");
  }
  const std::size_t N = s.examinees();
  if (N != stats.N) {
    throw Error(ErrorKind::ShapeError,
                "sub-test scores and test statistics disagree on N");
  }

  std::int64_t gg = 0, hh = 0, gh = 0;
  for (std::size_t i = 0; i < N; ++i) {
    gg += s.g[i] * s.g[i];
    hh += s.h[i] * s.h[i];
    gh += s.g[i] * s.h[i];
  }
  const double denom = static_cast<double>(N) * stats.variance;

  ReliabilityReport r;
  r.S_X_sq = stats.variance;
  r.error_variance = error_variance(s);
  r.r_tt = 1.0 - static_cast<double>(gg + hh - 2 * gh) / denom;
  r.r_tt_equal_norm = 1.0 - static_cast<double>(2 * gg - 2 * gh) / denom;
  r.S_T_sq = stats.variance - r.error_variance;
  r.mean_g = mean_of(s.g);
  r.mean_h = mean_of(s.h);
  r.variance_g = population_variance(s.g);
  r.variance_h = population_variance(s.h);

  if (r.r_tt < 0.0) {
    r.warnings.push_back(
        "negative reliability: error variance exceeds observed variance; the "
        "halves are not parallel");
  } else {
    r.r_XT = std::sqrt(r.r_tt);
  }

  r.r_gh = split_half_correlation(s);
  if (!r.r_gh) {
    r.warnings.push_back("split-half correlation undefined: a half has zero "
                         "variance");
  }

  if (N >= 3) {
    r.f_test = f_test_equal_variance(s);
    if (!r.f_test) {
      r.warnings.push_back("F-test undefined: a half has zero variance");
    }
  }

  r.geometry = true_score_geometry(stats, r.r_tt);
  if (!r.geometry) {
    r.warnings.push_back("true-score geometry skipped: reliability outside "
                         "[0, 1]");
  }
  return r;
}

TestAnalysis analyze_test(const ScoreMatrix& m, const SplitOptions& options) {
  TestAnalysis a;
  a.split = split(m, options);
  a.halves = sub_test_scores(m, a.split.assignment);
  a.totals = paired_totals(a.halves);
  a.stats = descriptive_stats(a.totals, 2 * a.split.assignment.rows());
  a.reliability = classical_reliability(a.halves, a.stats);
  return a;
}

}  // namespace splithalf
