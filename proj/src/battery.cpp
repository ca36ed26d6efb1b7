#include "splithalf/battery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "splithalf/errors.hpp"
#include "splithalf/stats.hpp"

namespace splithalf {

std::string_view to_string(WeightMethod m) {
  switch (m) {
    case WeightMethod::Lagrange: return "lagrange";
    case WeightMethod::NonnegQp: return "nonneg_qp";
    case WeightMethod::EigenCov: return "eigen_cov";
    case WeightMethod::EigenCorr: return "eigen_corr";
    case WeightMethod::Equal: return "equal";
  }
  return "unknown";
}

std::vector<double> BatteryInput::reliabilities() const {
  std::vector<double> r;
  r.reserve(tests.size());
  for (const auto& t : tests) r.push_back(t.r_tt);
  return r;
}

CovMatrix covariance_matrix(const BatteryInput& b) {
  const std::size_t k = b.size();
  if (k == 0) throw Error(ErrorKind::TooSmall, "battery has no tests");
  const std::size_t N = b.tests[0].scores.size();
  if (N < 2) throw Error(ErrorKind::TooSmall, "battery needs N >= 2");
  for (const auto& t : b.tests) {
    if (t.scores.size() != N) {
      throw Error(ErrorKind::ShapeError,
                  "test '" + t.name + "' has " +
                      std::to_string(t.scores.size()) +
                      " examinees, expected " + std::to_string(N));
    }
  }

  std::vector<double> means(k);
  for (std::size_t i = 0; i < k; ++i) means[i] = mean_of(b.tests[i].scores.totals);

  CovMatrix out{Matrix(k)};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double s = 0.0;
      const auto& xi = b.tests[i].scores.totals;
      const auto& xj = b.tests[j].scores.totals;
      for (std::size_t e = 0; e < N; ++e) {
        s += (static_cast<double>(xi[e]) - means[i]) *
             (static_cast<double>(xj[e]) - means[j]);
      }
      out.d(i, j) = out.d(j, i) = s / static_cast<double>(N);
    }
  }
  return out;
}

CovMatrix make_cov_matrix(Matrix d) {
  if (!d.is_symmetric(1e-12)) {
    throw Error(ErrorKind::ShapeError, "covariance matrix is not symmetric");
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d(i, i) < 0.0) {
      throw Error(ErrorKind::ShapeError,
                  "covariance matrix has a negative variance");
    }
  }
  return CovMatrix{std::move(d)};
}

namespace {

void check_reliabilities(std::span<const double> r_tt, const CovMatrix& d) {
  if (r_tt.size() != d.size()) {
    throw Error(ErrorKind::ShapeError,
                "reliability count does not match covariance matrix");
  }
  if (d.size() == 0) throw Error(ErrorKind::TooSmall, "battery has no tests");
}

struct Expansion {
  double true_part = 0.0;
  double total = 0.0;
};

// Σ r_i w_i² S_i + Σ_{i≠j} w_i w_j cov_ij over Σ w_i² S_i + Σ_{i≠j} w_i w_j cov_ij
Expansion expand(std::span<const double> r_tt, const CovMatrix& d,
                 std::span<const double> w) {
  Expansion e;
  for (std::size_t i = 0; i < d.size(); ++i) {
    e.true_part += r_tt[i] * w[i] * w[i] * d(i, i);
    e.total += w[i] * w[i] * d(i, i);
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (i == j) continue;
      e.true_part += w[i] * w[j] * d(i, j);
      e.total += w[i] * w[j] * d(i, j);
    }
  }
  return e;
}

std::vector<double> ones(std::size_t k) { return std::vector<double>(k, 1.0); }

void renormalise(std::vector<double>& w) {
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= s;
}

}  // namespace

double summative_reliability(std::span<const double> r_tt, const CovMatrix& d) {
  check_reliabilities(r_tt, d);
  const auto e = expand(r_tt, d, ones(d.size()));
  if (!(e.total > 0.0)) {
    throw Error(ErrorKind::Degenerate,
                "summative battery variance is not positive");
  }
  return e.true_part / e.total;
}

BatteryReport weighted_reliability(std::span<const double> r_tt,
                                   const CovMatrix& d, const WeightVector& w) {
  check_reliabilities(r_tt, d);
  if (w.w.size() != d.size()) {
    throw Error(ErrorKind::ShapeError, "weight count does not match battery");
  }
  const double sum = std::accumulate(w.w.begin(), w.w.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorKind::RangeError, "weights must sum to 1");
  }
  const auto e = expand(r_tt, d, w.w);
  if (!(e.total > 0.0)) {
    throw Error(ErrorKind::Degenerate,
                "weighted battery variance is not positive");
  }
  BatteryReport out;
  out.weights = w;
  out.variance_Y = quadratic_form(d.d, w.w);
  out.true_variance_Y = e.true_part;
  out.r_battery = e.true_part / e.total;
  const bool inputs_in_range =
      std::all_of(r_tt.begin(), r_tt.end(),
                  [](double r) { return r >= 0.0 && r <= 1.0; });
  if (inputs_in_range && (out.r_battery < 0.0 || out.r_battery > 1.0)) {
    out.warnings.push_back("battery reliability outside [0, 1]");
  }
  return out;
}

WeightVector optimal_weights(const CovMatrix& d) {
  const std::size_t k = d.size();
  if (k == 0) throw Error(ErrorKind::TooSmall, "battery has no tests");
  const auto e = ones(k);
  const auto z = solve(d.d, e);
  const double denom = std::accumulate(z.begin(), z.end(), 0.0);
  if (!(std::abs(denom) > 0.0) || !std::isfinite(denom)) {
    throw Error(ErrorKind::SingularMatrix, "eᵀD⁻¹e vanishes");
  }

  WeightVector out;
  out.method = WeightMethod::Lagrange;
  out.w.resize(k);
  for (std::size_t i = 0; i < k; ++i) out.w[i] = z[i] / denom;
  out.lambda = 2.0 / denom;

  const double cond = condition_number_1(d.d);
  if (cond > kConditionWarning) {
    std::ostringstream msg;
    msg << "covariance matrix is near-singular (condition number " << cond
        << ")";
    out.warnings.push_back(msg.str());
  }
  for (auto v : out.w) {
    if (v < 0.0) {
      out.warnings.push_back("negative weight; consider nonnegative weights");
      break;
    }
  }
  return out;
}

WeightVector nonnegative_weights(const CovMatrix& d) {
  const std::size_t k = d.size();
  if (k == 0) throw Error(ErrorKind::TooSmall, "battery has no tests");

  std::vector<std::size_t> support(k);
  std::iota(support.begin(), support.end(), std::size_t{0});

  while (!support.empty()) {
    const std::size_t s = support.size();
    Matrix sub(s);
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b) sub(a, b) = d(support[a], support[b]);
    const auto z = solve(sub, ones(s));
    const double denom = std::accumulate(z.begin(), z.end(), 0.0);
    if (!(std::abs(denom) > 0.0)) {
      throw Error(ErrorKind::Degenerate, "restricted eᵀD⁻¹e vanishes");
    }

    std::optional<std::size_t> most_negative;
    for (std::size_t a = 0; a < s; ++a) {
      const double w = z[a] / denom;
      if (w < 0.0 && (!most_negative || w < z[*most_negative] / denom)) {
        most_negative = a;
      }
    }
    if (!most_negative) {
      WeightVector out;
      out.method = WeightMethod::NonnegQp;
      out.w.assign(k, 0.0);
      for (std::size_t a = 0; a < s; ++a) out.w[support[a]] = z[a] / denom;
      out.lambda = 2.0 / denom;
      if (s < k) {
        out.warnings.push_back(std::to_string(k - s) +
                               " test(s) given zero weight");
      }
      return out;
    }
    support.erase(support.begin() +
                  static_cast<std::ptrdiff_t>(*most_negative));
  }
  throw Error(ErrorKind::Degenerate, "no feasible nonnegative support");
}

WeightVector eigen_weights(const CovMatrix& d, EigenVariant variant) {
  const std::size_t k = d.size();
  if (k == 0) throw Error(ErrorKind::TooSmall, "battery has no tests");
  if (!d.d.is_symmetric(1e-12)) {
    throw Error(ErrorKind::ShapeError, "covariance matrix is not symmetric");
  }

  Matrix target = d.d;
  std::vector<double> sd(k, 1.0);
  if (variant == EigenVariant::CorrScaled) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!(d(i, i) > 0.0)) {
        throw Error(ErrorKind::Degenerate,
                    "correlation undefined for a zero-variance test");
      }
      sd[i] = std::sqrt(d(i, i));
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) target(i, j) = d(i, j) / (sd[i] * sd[j]);
  }

  const auto eig = jacobi_eigen(target, 1e-10);
  WeightVector out;
  out.method = variant == EigenVariant::CovProportional ? WeightMethod::EigenCov
                                                        : WeightMethod::EigenCorr;
  if (k > 1 && std::abs(eig.values[0] - eig.values[1]) <=
                   1e-10 * std::max(1.0, std::abs(eig.values[0]))) {
    out.warnings.push_back(
        "largest eigenvalue is repeated; eigenvector choice is arbitrary");
  }

  out.w = eig.vectors[0];
  for (std::size_t i = 0; i < k; ++i) out.w[i] /= sd[i];
  const double sum = std::accumulate(out.w.begin(), out.w.end(), 0.0);
  if (!(std::abs(sum) > 1e-12)) {
    throw Error(ErrorKind::Degenerate,
                "principal eigenvector components sum to zero");
  }
  renormalise(out.w);
  return out;
}

WeightVector equal_weights(std::size_t k) {
  if (k == 0) throw Error(ErrorKind::TooSmall, "battery has no tests");
  WeightVector out;
  out.method = WeightMethod::Equal;
  out.w.assign(k, 1.0 / static_cast<double>(k));
  return out;
}

}  // namespace splithalf
