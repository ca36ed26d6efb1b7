#include "splithalf/stats.hpp"

#include <cmath>

#include "splithalf/errors.hpp"

namespace splithalf {

double mean_of(std::span<const std::int64_t> v) {
  if (v.empty()) return 0.0;
  std::int64_t sum = 0;
  for (auto x : v) sum += x;
  return static_cast<double>(sum) / static_cast<double>(v.size());
}

namespace {

double sum_squared_deviation(std::span<const std::int64_t> v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (auto x : v) {
    const double d = static_cast<double>(x) - m;
    ss += d * d;
  }
  return ss;
}

}  // namespace

double population_variance(std::span<const std::int64_t> v) {
  if (v.empty()) return 0.0;
  return sum_squared_deviation(v) / static_cast<double>(v.size());
}

double sample_variance(std::span<const std::int64_t> v) {
  if (v.size() < 2) return 0.0;
  return sum_squared_deviation(v) / static_cast<double>(v.size() - 1);
}

TestStats descriptive_stats(const ExamineeScores& x, std::size_t n) {
  if (x.size() == 0 || n == 0) {
    throw Error(ErrorKind::TooSmall,
                "descriptive statistics need a nonempty score vector and n >= 1");
  }
  TestStats s;
  s.N = x.size();
  s.n = n;
  s.mean = mean_of(x.totals);
  s.variance = population_variance(x.totals);

  std::int64_t sum = 0;
  double sumsq = 0.0;
  for (auto v : x.totals) {
    sum += v;
    sumsq += static_cast<double>(v) * static_cast<double>(v);
  }
  const double N = static_cast<double>(s.N);
  const double nn = static_cast<double>(n);
  s.norm_X = std::sqrt(sumsq);
  s.norm_I = std::sqrt(N * nn * nn);
  s.angle_defined = s.norm_X > 0.0;
  if (s.angle_defined) {
    // X . I = n * sum(X)
    s.cos_theta_X = nn * static_cast<double>(sum) / (s.norm_X * s.norm_I);
    if (s.cos_theta_X > 1.0) s.cos_theta_X = 1.0;
  }
  return s;
}

double geometric_mean(const TestStats& s) {
  if (!s.angle_defined) return 0.0;
  return s.norm_X * s.cos_theta_X / std::sqrt(static_cast<double>(s.N));
}

double geometric_variance(const TestStats& s) {
  if (!s.angle_defined) return 0.0;
  const double sin2 = 1.0 - s.cos_theta_X * s.cos_theta_X;
  return s.norm_X * s.norm_X * sin2 / static_cast<double>(s.N);
}

}  // namespace splithalf
