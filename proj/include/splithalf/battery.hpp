#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "splithalf/linalg.hpp"
#include "splithalf/score_matrix.hpp"

namespace splithalf {

/// One component test of a battery.
struct ComponentTest {
  std::string name;
  ExamineeScores scores;
  double r_tt = 0.0;
};

/// K component tests administered to the same N examinees.
struct BatteryInput {
  std::vector<ComponentTest> tests;

  std::size_t size() const noexcept { return tests.size(); }
  std::vector<double> reliabilities() const;
};

/// Population variance-covariance matrix of component test scores.
struct CovMatrix {
  Matrix d;

  std::size_t size() const noexcept { return d.size(); }
  double operator()(std::size_t i, std::size_t j) const { return d(i, j); }
};

enum class WeightMethod { Lagrange, NonnegQp, EigenCov, EigenCorr, Equal };

std::string_view to_string(WeightMethod m);

struct WeightVector {
  std::vector<double> w;
  /// Lagrange multiplier 2 / (eᵀD⁻¹e); only set by the Lagrange and
  /// nonnegative methods.
  std::optional<double> lambda;
  WeightMethod method = WeightMethod::Equal;
  std::vector<std::string> warnings;
};

struct BatteryReport {
  WeightVector weights;
  double r_battery = 0.0;
  /// WᵀDW.
  double variance_Y = 0.0;
  /// Σ r_i W_i² S_Xi + Σ_{i≠j} W_i W_j cov_ij.
  double true_variance_Y = 0.0;
  std::vector<std::string> warnings;
};

/// Throws ShapeError when the tests disagree on N, TooSmall for K = 0 or
/// N < 2.
CovMatrix covariance_matrix(const BatteryInput& b);

/// Wraps a precomputed matrix; throws ShapeError if it is not symmetric or
/// has a negative diagonal entry.
CovMatrix make_cov_matrix(Matrix d);

/// Reliability of the unweighted sum of the component scores. The diagonal
/// of `d` supplies the test variances. Throws Degenerate when the battery
/// variance is not positive.
double summative_reliability(std::span<const double> r_tt, const CovMatrix& d);

/// Reliability of Y = Σ W_i X_i. Requires Σ W_i = 1 (RangeError otherwise).
BatteryReport weighted_reliability(std::span<const double> r_tt,
                                   const CovMatrix& d, const WeightVector& w);

/// Minimum-variance weights D⁻¹e / (eᵀD⁻¹e). Throws SingularMatrix; warns
/// when the 1-norm condition number exceeds 1e12.
WeightVector optimal_weights(const CovMatrix& d);

/// Minimum variance with W ≥ 0: solve on the current support, drop the most
/// negative weight (lowest index on ties), repeat. Throws Degenerate if the
/// support empties.
WeightVector nonnegative_weights(const CovMatrix& d);

enum class EigenVariant { CovProportional, CorrScaled };

/// Principal-eigenvector weights rescaled to sum to 1.
WeightVector eigen_weights(const CovMatrix& d, EigenVariant variant);

WeightVector equal_weights(std::size_t k);

inline constexpr double kConditionWarning = 1e12;

}  // namespace splithalf
