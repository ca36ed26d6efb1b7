#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "splithalf/errors.hpp"
#include "splithalf/reliability.hpp"
#include "splithalf/simulate.hpp"
#include "test_support.hpp"

using namespace splithalf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

TestStats stats_of(const SubTestScores& s) {
  return descriptive_stats(paired_totals(s), 10);
}

SubTestScores random_halves(std::mt19937& gen, std::size_t N) {
  std::uniform_int_distribution<int> a(0, 12);
  std::uniform_int_distribution<int> noise(-2, 2);
  SubTestScores s;
  for (std::size_t i = 0; i < N; ++i) {
    const int base = a(gen);
    s.g.push_back(std::clamp(base + noise(gen), 0, 15));
    s.h.push_back(std::clamp(base + noise(gen), 0, 15));
  }
  return s;
}

}  // namespace

TEST_CASE("error variance examples") {
  CHECK(error_variance({{3, 1, 4}, {3, 1, 4}}) == 0.0);
  CHECK(error_variance({{2, 0}, {0, 2}}) == 4.0);
  // (1 - r_tt) S_X² with r_tt ≈ 0.66 and S_X² ≈ 19.63.
  CHECK_THAT((1.0 - 0.66) * 19.63, WithinAbs(6.67, 0.01));
}

TEST_CASE("error variance equals the cosine form") {
  std::mt19937 gen(3);
  for (int rep = 0; rep < 50; ++rep) {
    const auto s = random_halves(gen, 40);
    double gg = 0, hh = 0, gh = 0;
    for (std::size_t i = 0; i < 40; ++i) {
      gg += s.g[i] * s.g[i];
      hh += s.h[i] * s.h[i];
      gh += s.g[i] * s.h[i];
    }
    const double cos_gh = gh / std::sqrt(gg * hh);
    const double cosine_form =
        (gg + hh - 2.0 * std::sqrt(gg) * std::sqrt(hh) * cos_gh) / 40.0;
    CHECK_THAT(error_variance(s), WithinRel(cosine_form, 1e-9));
  }
}

TEST_CASE("identical halves are perfectly reliable") {
  const SubTestScores s{{1, 4, 2, 5, 3}, {1, 4, 2, 5, 3}};
  const auto r = classical_reliability(s, stats_of(s));
  CHECK(r.error_variance == 0.0);
  CHECK(r.r_tt == 1.0);
  CHECK(*r.r_gh == 1.0);
  REQUIRE(r.f_test);
  CHECK(r.f_test->f_stat == 1.0);
  CHECK(r.f_test->p_value == 1.0);
  REQUIRE(r.geometry);
  const auto st = stats_of(s);
  CHECK_THAT(r.geometry->norm_T, WithinRel(st.norm_X, 1e-12));
  CHECK_THAT(r.geometry->cos_theta_T, WithinRel(st.cos_theta_X, 1e-12));
}

TEST_CASE("reliability matches direct vector arithmetic") {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    const auto m = test_support::ability_matrix(8, 6, seed);
    const auto a = analyze_test(m);
    const auto& s = a.halves;
    double diff2 = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
      diff2 += std::pow(static_cast<double>(s.g[i] - s.h[i]), 2);
      mean += static_cast<double>(s.g[i] + s.h[i]);
    }
    mean /= 8.0;
    double var = 0.0;
    for (std::size_t i = 0; i < 8; ++i)
      var += std::pow(static_cast<double>(s.g[i] + s.h[i]) - mean, 2);
    var /= 8.0;
    if (var == 0.0) continue;
    CHECK_THAT(a.reliability.r_tt, WithinAbs(1.0 - diff2 / (8.0 * var), 1e-12));
  }
}

TEST_CASE("variance decomposes into true and error parts") {
  std::mt19937 gen(17);
  for (int rep = 0; rep < 100; ++rep) {
    const auto s = random_halves(gen, 30);
    const auto st = stats_of(s);
    if (st.variance == 0.0) continue;
    const auto r = classical_reliability(s, st);
    CHECK_THAT(r.S_T_sq + r.error_variance, WithinRel(st.variance, 1e-9));
    CHECK_THAT(r.S_T_sq, WithinRel(r.r_tt * st.variance, 1e-9));
  }
}

TEST_CASE("equal-norm shortcut differs by the norm gap term") {
  std::mt19937 gen(23);
  for (int rep = 0; rep < 100; ++rep) {
    const auto s = random_halves(gen, 50);
    const auto st = stats_of(s);
    if (st.variance == 0.0) continue;
    const auto r = classical_reliability(s, st);
    double gg = 0, hh = 0;
    for (std::size_t i = 0; i < 50; ++i) {
      gg += s.g[i] * s.g[i];
      hh += s.h[i] * s.h[i];
    }
    // r_tt - r_tt_equal_norm = (‖X_g‖² - ‖X_h‖²) / (N S_X²) exactly.
    const double denom = 50.0 * st.variance;
    CHECK_THAT(r.r_tt - r.r_tt_equal_norm, WithinAbs((gg - hh) / denom, 1e-12));
    if (gg == hh) CHECK(r.r_tt == r.r_tt_equal_norm);
  }
}

TEST_CASE("zero variance is an error") {
  const SubTestScores s{{2, 2, 2}, {1, 1, 1}};
  try {
    classical_reliability(s, stats_of(s));
    FAIL("expected ZeroVariance");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroVariance);
  }
}

TEST_CASE("non-parallel halves give a flagged negative reliability") {
  const SubTestScores s{{0, 5, 0, 5}, {5, 0, 5, 1}};
  const auto r = classical_reliability(s, stats_of(s));
  CHECK(r.r_tt < 0.0);
  CHECK_FALSE(r.r_XT);
  CHECK_FALSE(r.geometry);
  CHECK(r.warnings.size() >= 2);
}

TEST_CASE("split-half correlation") {
  CHECK(*split_half_correlation({{1, 2, 3}, {1, 2, 3}}) == 1.0);
  CHECK_THAT(*split_half_correlation({{1, 2, 3}, {3, 2, 1}}), WithinAbs(-1.0, 1e-15));
  CHECK_FALSE(split_half_correlation({{1, 1, 1}, {3, 2, 1}}));
}

TEST_CASE("F test") {
  // Observed half variances 6.81 and 6.49.
  CHECK_THAT(6.81 / 6.49, WithinAbs(1.049, 0.0005));
  // Two-sided p-values frozen from an independent F-distribution table.
  CHECK_THAT(f_two_sided_p(6.81 / 6.49, 911), WithinAbs(0.4677725685256858, 1e-8));
  CHECK_THAT(f_two_sided_p(1.5, 20), WithinAbs(0.37218404283082346, 1e-8));
  CHECK_THAT(f_two_sided_p(1.2, 49), WithinAbs(0.5257926448097864, 1e-8));
  CHECK_THAT(f_two_sided_p(4.0, 99), WithinAbs(3.337666458578822e-11, 1e-8));

  // Variance ratio 4 at N = 100.
  SubTestScores s;
  std::mt19937 gen(8);
  std::normal_distribution<double> z(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    s.g.push_back(static_cast<std::int64_t>(std::lround(50 + 10 * z(gen))));
    s.h.push_back(static_cast<std::int64_t>(std::lround(50 + 20 * z(gen))));
  }
  const auto t = f_test_equal_variance(s);
  REQUIRE(t);
  CHECK(t->p_value < 0.001);

  const SubTestScores swapped{s.h, s.g};
  CHECK(f_test_equal_variance(swapped)->f_stat == t->f_stat);

  CHECK_FALSE(f_test_equal_variance({{1, 1, 1}, {1, 2, 3}}));
  CHECK_THROWS_AS(f_test_equal_variance({{1, 2}, {1, 2}}), Error);
}

TEST_CASE("true-score geometry") {
  std::mt19937 gen(41);
  std::uniform_int_distribution<int> d(0, 30);
  for (int rep = 0; rep < 50; ++rep) {
    ExamineeScores x;
    for (int i = 0; i < 25; ++i) x.totals.push_back(d(gen));
    const auto st = descriptive_stats(x, 30);
    const auto g = true_score_geometry(st, 0.5);
    REQUIRE(g);
    CHECK_THAT(g->S_T_sq, WithinRel(0.5 * st.variance, 1e-12));
    CHECK_THAT(g->S_T_sq_from_angle, WithinRel(g->S_T_sq, 1e-9));
  }
  // 0.66 x 19.63
  CHECK_THAT(0.66 * 19.63, WithinAbs(12.96, 0.005));
  const auto st = descriptive_stats(ExamineeScores{{1, 2, 3}}, 3);
  CHECK_FALSE(true_score_geometry(st, 1.2));
  CHECK_FALSE(true_score_geometry(st, -0.1));
}

TEST_CASE("split-half correlation exceeds reliability on realistic data") {
  int holds = 0;
  int runs = 0;
  for (auto kind : {ModelKind::D1, ModelKind::D3}) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto a = analyze_test(generate({kind, 300, 20, seed}));
      ++runs;
      if (a.reliability.r_gh && *a.reliability.r_gh >= a.reliability.r_tt) ++holds;
    }
  }
  WARN(holds << " of " << runs << " runs had r_gh >= r_tt");
  CHECK(runs == 100);
  SUCCEED();
}
