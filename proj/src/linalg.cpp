#include "splithalf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "splithalf/errors.hpp"

namespace splithalf {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : k_(rows.size()) {
  data_.reserve(k_ * k_);
  for (const auto& r : rows) {
    if (r.size() != k_) {
      throw Error(ErrorKind::ShapeError, "matrix rows must form a square");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t k) {
  Matrix m(k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::operator*(std::span<const double> v) const {
  std::vector<double> out(k_, 0.0);
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = 0; j < k_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

bool Matrix::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = i + 1; j < k_; ++j) {
      const double scale = std::max({1.0, std::abs((*this)(i, j)),
                                     std::abs((*this)(j, i))});
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol * scale) return false;
    }
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double quadratic_form(const Matrix& a, std::span<const double> v) {
  return dot(v, a * v);
}

std::vector<double> solve(const Matrix& a, std::span<const double> b) {
  const std::size_t k = a.size();
  if (b.size() != k) {
    throw Error(ErrorKind::ShapeError, "right-hand side length mismatch");
  }
  Matrix m = a;
  std::vector<double> x(b.begin(), b.end());

  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) scale = std::max(scale, std::abs(a(i, j)));
  const double tiny = scale * static_cast<double>(k) *
                      std::numeric_limits<double>::epsilon();

  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    if (!(std::abs(m(pivot, col)) > tiny)) {
      throw Error(ErrorKind::SingularMatrix, "matrix is singular");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < k; ++j) std::swap(m(col, j), m(pivot, j));
      std::swap(x[col], x[pivot]);
    }
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = m(r, col) / m(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < k; ++j) m(r, j) -= f * m(col, j);
      x[r] -= f * x[col];
    }
  }
  for (std::size_t i = k; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < k; ++j) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

namespace {

double norm_1(const Matrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

double condition_number_1(const Matrix& a) {
  const std::size_t k = a.size();
  double inv_norm = 0.0;
  try {
    std::vector<double> e(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      std::fill(e.begin(), e.end(), 0.0);
      e[j] = 1.0;
      const auto col = solve(a, e);
      double s = 0.0;
      for (auto v : col) s += std::abs(v);
      inv_norm = std::max(inv_norm, s);
    }
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
  return norm_1(a) * inv_norm;
}

SymmetricEigen jacobi_eigen(const Matrix& a, double tol,
                            std::size_t max_sweeps) {
  const std::size_t k = a.size();
  Matrix m = a;
  Matrix v = Matrix::identity(k);

  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) total += m(i, j) * m(i, j);
  const double threshold = tol * std::sqrt(total);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) s += 2.0 * m(i, j) * m(i, j);
    return std::sqrt(s);
  };

  SymmetricEigen out;
  while (out.sweeps < max_sweeps && off_norm() > threshold) {
    ++out.sweeps;
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < k; ++r) {
          const double mrp = m(r, p);
          const double mrq = m(r, q);
          m(r, p) = c * mrp - s * mrq;
          m(r, q) = s * mrp + c * mrq;
        }
        for (std::size_t r = 0; r < k; ++r) {
          const double mpr = m(p, r);
          const double mqr = m(q, r);
          m(p, r) = c * mpr - s * mqr;
          m(q, r) = s * mpr + c * mqr;
        }
        for (std::size_t r = 0; r < k; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return m(x, x) > m(y, y);
  });
  for (auto idx : order) {
    out.values.push_back(m(idx, idx));
    std::vector<double> vec(k);
    for (std::size_t r = 0; r < k; ++r) vec[r] = v(r, idx);
    out.vectors.push_back(std::move(vec));
  }
  return out;
}

}  // namespace splithalf
