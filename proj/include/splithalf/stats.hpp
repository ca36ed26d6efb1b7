#pragma once

#include <cstddef>
#include <span>

#include "splithalf/score_matrix.hpp"

namespace splithalf {

/// Descriptive statistics of a score vector X in person space, alongside the
/// vector I of maximum attainable scores (every component equal to n).
///
/// `mean` and `variance` come from the direct moment formulas (population
/// variance, divisor N). The norms and the angle between X and I give the
/// same two quantities geometrically; see geometric_mean/geometric_variance.
struct TestStats {
  double mean = 0.0;
  double variance = 0.0;
  double norm_X = 0.0;
  double norm_I = 0.0;
  /// cos of the angle between X and I; meaningless when !angle_defined.
  double cos_theta_X = 0.0;
  bool angle_defined = false;
  std::size_t N = 0;
  std::size_t n = 0;
};

/// `n` is the number of items the scores were summed over. Throws
/// TooSmall when `x` is empty or `n` is zero.
TestStats descriptive_stats(const ExamineeScores& x, std::size_t n);

/// ‖X‖ cos θ_X / √N.
double geometric_mean(const TestStats& s);

/// ‖X‖² sin² θ_X / N.
double geometric_variance(const TestStats& s);

/// Population mean/variance of an arbitrary integer vector.
double mean_of(std::span<const std::int64_t> v);
double population_variance(std::span<const std::int64_t> v);
/// Divisor N-1.
double sample_variance(std::span<const std::int64_t> v);

}  // namespace splithalf
