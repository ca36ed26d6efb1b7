#include <catch_amalgamated.hpp>

#include <random>

#include "splithalf/errors.hpp"
#include "splithalf/truescore.hpp"

using namespace splithalf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ExamineeScores random_scores(std::mt19937& gen, std::size_t N, int hi) {
  std::uniform_int_distribution<int> d(0, hi);
  ExamineeScores x;
  for (std::size_t i = 0; i < N; ++i) x.totals.push_back(d(gen));
  return x;
}

TestStats fake_stats(double mean, double variance, std::size_t n = 50) {
  TestStats s;
  s.mean = mean;
  s.variance = variance;
  s.n = n;
  return s;
}

}  // namespace

TEST_CASE("regression through the mean") {
  const auto t = estimate_true_scores(ExamineeScores{{10, 14}},
                                      fake_stats(10.0, 4.0), 0.5,
                                      ReliabilityKind::Classical);
  CHECK(t.rows[0].estimate == 10.0);
  CHECK(t.rows[1].estimate == 12.0);
  CHECK(t.alpha1 == 5.0);
  CHECK(t.beta1 == 0.5);
  for (const auto& row : t.rows) {
    CHECK_THAT(row.high - row.low, WithinRel(2.0 * t.S_E, 1e-12));
  }
}

TEST_CASE("interval width and prediction gap from reported constants") {
  const auto t = estimate_true_scores(ExamineeScores{{11}}, fake_stats(11.0, 19.63),
                                      0.66, ReliabilityKind::Classical);
  CHECK_THAT(t.S_E, WithinAbs(2.58, 0.005));
  CHECK_THAT(t.prediction_gap, WithinAbs(4.41, 0.01));
  CHECK_THAT(t.S_E * t.S_E - t.prediction_error_variance,
             WithinRel(t.prediction_gap, 1e-12));
}

TEST_CASE("reliability out of range") {
  const auto s = fake_stats(5.0, 2.0);
  CHECK_THROWS_AS(estimate_true_scores(ExamineeScores{{1, 2}}, s, 1.1,
                                       ReliabilityKind::Classical),
                  Error);
  CHECK_THROWS_AS(estimate_true_scores(ExamineeScores{{1, 2}}, s, -0.01,
                                       ReliabilityKind::SplitHalf),
                  Error);
  CHECK_THROWS_AS(estimate_true_scores(ExamineeScores{{1, 2}}, fake_stats(1, 0),
                                       0.5, ReliabilityKind::Classical),
                  Error);
}

TEST_CASE("out-of-range estimates are flagged, not clipped") {
  TestStats s = fake_stats(5.0, 4.0, 6);
  const auto t = estimate_true_scores(ExamineeScores{{0}}, s, 1.0,
                                      ReliabilityKind::Classical);
  CHECK_FALSE(t.rows[0].out_of_range);
  s.mean = -1.0;
  const auto u = estimate_true_scores(ExamineeScores{{0}}, s, 0.0,
                                      ReliabilityKind::Classical);
  CHECK(u.rows[0].estimate == -1.0);
  CHECK(u.rows[0].out_of_range);
}

TEST_CASE("estimates preserve the mean and shrink the variance") {
  std::mt19937 gen(4);
  for (int rep = 0; rep < 50; ++rep) {
    const auto x = random_scores(gen, 60, 40);
    const auto st = descriptive_stats(x, 40);
    if (st.variance == 0.0) continue;
    const double r = 0.05 + 0.9 * (rep / 50.0);
    const auto t = estimate_true_scores(x, st, r, ReliabilityKind::Classical);
    double mean = 0.0;
    for (const auto& row : t.rows) mean += row.estimate;
    mean /= 60.0;
    double var = 0.0;
    for (const auto& row : t.rows) var += (row.estimate - mean) * (row.estimate - mean);
    var /= 60.0;
    CHECK_THAT(mean, WithinRel(st.mean, 1e-9));
    CHECK_THAT(var, WithinRel(r * r * st.variance, 1e-9));
    CHECK(var < r * st.variance);
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK_THAT(t.rows[i].estimate,
                 WithinAbs(t.alpha1 + t.beta1 * static_cast<double>(x[i]), 1e-12));
      for (std::size_t k = 0; k < x.size(); ++k)
        if (x[i] < x[k]) CHECK(t.rows[i].estimate < t.rows[k].estimate);
    }
  }
}

TEST_CASE("estimator comparison") {
  const auto st = fake_stats(10.0, 4.0);
  const auto c = compare_estimators(ExamineeScores{{10, 14, 6}}, st, 0.66, 0.99);
  CHECK_FALSE(c.reversed);
  CHECK(c.rows[0].difference == 0.0);
  CHECK(c.rows[0].sign == 0);
  CHECK_THAT(c.rows[1].difference, WithinAbs(1.32, 1e-12));
  CHECK(c.rows[1].sign == 1);
  CHECK_THAT(c.rows[2].difference, WithinAbs(-1.32, 1e-12));
  CHECK(c.rows[2].sign == -1);

  const auto rev = compare_estimators(ExamineeScores{{14}}, st, 0.9, 0.8);
  CHECK(rev.reversed);
  CHECK(rev.rows[0].sign == -1);
  CHECK_FALSE(rev.warnings.empty());
}

TEST_CASE("sign law for random reliabilities") {
  std::mt19937 gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const auto x = random_scores(gen, 40, 30);
    const auto st = descriptive_stats(x, 30);
    const double r_tt = u(gen);
    const double r_gh = r_tt + (1.0 - r_tt) * u(gen);
    if (r_gh == r_tt) continue;
    const auto c = compare_estimators(x, st, r_tt, r_gh);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double dev = static_cast<double>(x[i]) - st.mean;
      CHECK(c.rows[i].sign == (dev > 0) - (dev < 0));
    }
  }
}

TEST_CASE("percentile rank") {
  TrueScoreTable t;
  for (int k = 1; k <= 10; ++k) {
    TrueScoreRow row;
    row.examinee_id = std::to_string(k);
    row.estimate = k;
    t.rows.push_back(row);
  }
  CHECK(percentile_rank(t, 10.0) == 100.0);
  CHECK(percentile_rank(t, 0.5) == 0.0);
  CHECK(percentile_rank(t, 9.3) == 90.0);

  double previous = -1.0;
  for (double q = 0.0; q <= 11.0; q += 0.25) {
    const double p = percentile_rank(t, q);
    CHECK(p >= previous);
    CHECK(std::fmod(p, 10.0) == 0.0);
    previous = p;
  }
  CHECK_THROWS_AS(percentile_rank(TrueScoreTable{}, 1.0), Error);
}

TEST_CASE("estimate bins") {
  TrueScoreTable t;
  for (double e : {20.1, 20.9, 21.0, 3.5}) {
    TrueScoreRow row;
    row.examinee_id = std::to_string(e);
    row.estimate = e;
    t.rows.push_back(row);
  }
  const auto bins = estimate_bins(t);
  REQUIRE(bins.size() == 3);
  CHECK(bins.at(20.0).size() == 2);
  CHECK(bins.at(21.0).size() == 1);
  CHECK(bins.at(3.0).size() == 1);
  CHECK_THROWS_AS(estimate_bins(t, 0.0), Error);
}
