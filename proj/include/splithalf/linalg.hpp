#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace splithalf {

/// Small dense row-major square matrix.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t k, double fill = 0.0)
      : k_(k), data_(k * k, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t k);

  std::size_t size() const noexcept { return k_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * k_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * k_ + j];
  }

  std::vector<double> operator*(std::span<const double> v) const;
  bool is_symmetric(double tol = 1e-12) const;

 private:
  std::size_t k_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);

/// vᵀ A v.
double quadratic_form(const Matrix& a, std::span<const double> v);

/// Solves A x = b by Gaussian elimination with partial pivoting. Throws
/// SingularMatrix when a pivot vanishes.
std::vector<double> solve(const Matrix& a, std::span<const double> b);

/// ‖A‖₁ ‖A⁻¹‖₁, with A⁻¹ formed column by column. Infinity when singular.
double condition_number_1(const Matrix& a);

struct SymmetricEigen {
  /// Descending.
  std::vector<double> values;
  /// vectors[k] is the unit eigenvector for values[k].
  std::vector<std::vector<double>> vectors;
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls
/// below `tol` times the matrix norm.
SymmetricEigen jacobi_eigen(const Matrix& a, double tol = 1e-10,
                            std::size_t max_sweeps = 100);

}  // namespace splithalf
