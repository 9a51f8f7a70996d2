#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace toepfact {

using Scalar = std::complex<double>;
using Vector = std::vector<Scalar>;

/// Default relative tolerance for approximate comparisons.
inline constexpr double default_tolerance = 1e-10;

inline bool is_finite(const Scalar& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Square complex matrix, row-major.
class DenseMatrix {
public:
  DenseMatrix() = default;

  explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n) {}

  DenseMatrix(std::size_t n, std::vector<Scalar> entries)
      : n_(n), a_(std::move(entries)) {
    if (a_.size() != n_ * n_)
      throw dimension_error("DenseMatrix: expected " + std::to_string(n_ * n_) +
                            " entries, got " + std::to_string(a_.size()));
    if (!all_finite()) throw invalid_value_error("DenseMatrix: non-finite entry");
  }

  DenseMatrix(std::initializer_list<std::initializer_list<Scalar>> rows)
      : n_(rows.size()), a_() {
    a_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw dimension_error("DenseMatrix: rows must form a square");
      a_.insert(a_.end(), row.begin(), row.end());
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::span<Scalar> row(std::size_t i) { return {a_.data() + i * n_, n_}; }
  std::span<const Scalar> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

  std::span<Scalar> entries() noexcept { return a_; }
  std::span<const Scalar> entries() const noexcept { return a_; }

  Vector column(std::size_t j) const {
    Vector c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool all_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& z) { return is_finite(z); });
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : a_) m = std::max(m, std::abs(z));
    return m;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    require_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }

  DenseMatrix& operator-=(const DenseMatrix& o) {
    require_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }

  DenseMatrix& operator*=(Scalar c) {
    for (auto& z : a_) z *= c;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, Scalar c) { return a *= c; }
  friend DenseMatrix operator*(Scalar c, DenseMatrix a) { return a *= c; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    a.require_same(b);
    const std::size_t n = a.n_;
    DenseMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
      Scalar* ci = c.a_.data() + i * n;
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar aik = a(i, k);
        if (aik == Scalar{}) continue;
        const Scalar* bk = b.a_.data() + k * n;
        for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
      }
    }
    return c;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  void require_same(const DenseMatrix& o) const {
    if (o.n_ != n_)
      throw dimension_error("dimension mismatch: " + std::to_string(n_) + " vs " +
                            std::to_string(o.n_));
  }

  std::size_t n_ = 0;
  std::vector<Scalar> a_;
};

inline Vector matvec(const DenseMatrix& a, std::span<const Scalar> x) {
  const std::size_t n = a.size();
  if (x.size() != n) throw dimension_error("matvec: dimension mismatch");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Scalar s{};
    const auto r = a.row(i);
    for (std::size_t j = 0; j < n; ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

inline double norm2(std::span<const Scalar> x) {
  double s = 0.0;
  for (const auto& z : x) s += std::norm(z);
  return std::sqrt(s);
}

/// ||approx - exact||_F / ||exact||_F, or the absolute residual when exact is 0.
inline double relative_residual(const DenseMatrix& approx, const DenseMatrix& exact) {
  const double num = (approx - exact).frobenius_norm();
  const double den = exact.frobenius_norm();
  return den > 0.0 ? num / den : num;
}

inline double relative_residual(std::span<const Scalar> approx, std::span<const Scalar> exact) {
  if (approx.size() != exact.size()) throw dimension_error("relative_residual: length mismatch");
  double num = 0.0;
  for (std::size_t i = 0; i < approx.size(); ++i) num += std::norm(approx[i] - exact[i]);
  num = std::sqrt(num);
  const double den = norm2(exact);
  return den > 0.0 ? num / den : num;
}

inline bool approx_equal(const DenseMatrix& a, const DenseMatrix& b,
                         double tol = default_tolerance) {
  return a.size() == b.size() && relative_residual(a, b) <= tol;
}

}  // namespace toepfact
