#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "dense.hpp"

namespace toepfact {

/// Toeplitz matrix stored by its 2n-1 diagonals.
///
/// Sign convention: `diag[k + n - 1]` is the value on the diagonal j - i = k,
/// so positive k are superdiagonals. `at(k)` hides the offset. With this
/// convention the basis matrix B_1 has its ones on the first superdiagonal and
/// left-multiplication by B_j (j > 0) shifts rows up.
struct ToeplitzSpec {
  std::size_t n = 0;
  Vector diag;

  ToeplitzSpec() = default;
  explicit ToeplitzSpec(std::size_t dim) : n(dim), diag(dim ? 2 * dim - 1 : 0) {}
  ToeplitzSpec(std::size_t dim, Vector values) : n(dim), diag(std::move(values)) {
    if (n == 0 || diag.size() != 2 * n - 1)
      throw dimension_error("ToeplitzSpec: need 2n-1 diagonal values");
  }

  /// Builds T from its first row and first column (row[0] must equal col[0]).
  static ToeplitzSpec from_row_col(std::span<const Scalar> first_row,
                                   std::span<const Scalar> first_col) {
    const std::size_t dim = first_row.size();
    if (dim == 0 || first_col.size() != dim)
      throw dimension_error("ToeplitzSpec::from_row_col: row/column length mismatch");
    ToeplitzSpec t(dim);
    for (std::size_t k = 0; k < dim; ++k) t.at(static_cast<long>(k)) = first_row[k];
    for (std::size_t k = 1; k < dim; ++k) t.at(-static_cast<long>(k)) = first_col[k];
    return t;
  }

  Scalar& at(long k) { return diag[static_cast<std::size_t>(k + static_cast<long>(n) - 1)]; }
  const Scalar& at(long k) const {
    return diag[static_cast<std::size_t>(k + static_cast<long>(n) - 1)];
  }

  Scalar entry(std::size_t i, std::size_t j) const {
    return at(static_cast<long>(j) - static_cast<long>(i));
  }

  friend bool operator==(const ToeplitzSpec&, const ToeplitzSpec&) = default;
};

/// Hankel matrix stored by its 2n-1 anti-diagonals: `antidiag[i + j]`
/// (0-based i, j) is the value of h_{ij}.
struct HankelSpec {
  std::size_t n = 0;
  Vector antidiag;

  HankelSpec() = default;
  explicit HankelSpec(std::size_t dim) : n(dim), antidiag(dim ? 2 * dim - 1 : 0) {}
  HankelSpec(std::size_t dim, Vector values) : n(dim), antidiag(std::move(values)) {
    if (n == 0 || antidiag.size() != 2 * n - 1)
      throw dimension_error("HankelSpec: need 2n-1 anti-diagonal values");
  }

  Scalar entry(std::size_t i, std::size_t j) const { return antidiag[i + j]; }

  friend bool operator==(const HankelSpec&, const HankelSpec&) = default;
};

/// Permutation matrix P with P(i, perm[i]) = 1, so (P x)_i = x_{perm[i]}.
/// Indices are 0-based in memory; the text formats use 1-based indices.
struct PermutationSpec {
  std::vector<std::size_t> perm;

  PermutationSpec() = default;
  explicit PermutationSpec(std::vector<std::size_t> p) : perm(std::move(p)) {
    std::vector<bool> seen(perm.size(), false);
    for (auto v : perm) {
      if (v >= perm.size() || seen[v]) throw invalid_value_error("PermutationSpec: not a bijection");
      seen[v] = true;
    }
  }

  std::size_t size() const noexcept { return perm.size(); }

  static PermutationSpec identity(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return PermutationSpec(std::move(p));
  }

  /// The transposition exchanging a and b (0-based).
  static PermutationSpec transposition(std::size_t n, std::size_t a, std::size_t b) {
    auto p = identity(n);
    if (a >= n || b >= n) throw out_of_range_error("transposition index out of range");
    std::swap(p.perm[a], p.perm[b]);
    return p;
  }

  /// The exchange matrix: ones where i + j = n - 1 (0-based).
  static PermutationSpec anti_identity(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = n - 1 - i;
    return PermutationSpec(std::move(p));
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != i) return false;
    return true;
  }

  /// Matrix product this * other.
  PermutationSpec then(const PermutationSpec& other) const {
    if (other.size() != size()) throw dimension_error("permutation product: dimension mismatch");
    std::vector<std::size_t> p(size());
    for (std::size_t i = 0; i < size(); ++i) p[i] = other.perm[perm[i]];
    return PermutationSpec(std::move(p));
  }

  PermutationSpec inverse() const {
    std::vector<std::size_t> p(size());
    for (std::size_t i = 0; i < size(); ++i) p[perm[i]] = i;
    return PermutationSpec(std::move(p));
  }

  friend bool operator==(const PermutationSpec&, const PermutationSpec&) = default;
};

/// Basis Toeplitz matrix with ones on the diagonal j - i = k.
inline ToeplitzSpec shift_basis(long k, std::size_t n) {
  if (n == 0) throw dimension_error("shift_basis: n must be positive");
  if (std::abs(k) >= static_cast<long>(n))
    throw out_of_range_error("shift_basis: |k| = " + std::to_string(std::abs(k)) +
                             " must be below n = " + std::to_string(n));
  ToeplitzSpec t(n);
  t.at(k) = 1.0;
  return t;
}

inline DenseMatrix densify(const ToeplitzSpec& t) {
  DenseMatrix a(t.n);
  for (std::size_t i = 0; i < t.n; ++i)
    for (std::size_t j = 0; j < t.n; ++j) a(i, j) = t.entry(i, j);
  return a;
}

inline DenseMatrix densify(const HankelSpec& h) {
  DenseMatrix a(h.n);
  for (std::size_t i = 0; i < h.n; ++i)
    for (std::size_t j = 0; j < h.n; ++j) a(i, j) = h.entry(i, j);
  return a;
}

inline DenseMatrix densify(const PermutationSpec& p) {
  DenseMatrix a(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) a(i, p.perm[i]) = 1.0;
  return a;
}

/// P * A: row i of the result is row perm[i] of A.
inline DenseMatrix permute_rows(const PermutationSpec& p, const DenseMatrix& a) {
  if (p.size() != a.size()) throw dimension_error("permute_rows: dimension mismatch");
  DenseMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto src = a.row(p.perm[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

/// A * P: column perm[i] of the result is column i of A.
inline DenseMatrix permute_columns(const DenseMatrix& a, const PermutationSpec& p) {
  if (p.size() != a.size()) throw dimension_error("permute_columns: dimension mismatch");
  DenseMatrix out(a.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t i = 0; i < a.size(); ++i) out(r, p.perm[i]) = a(r, i);
  return out;
}

inline Vector permute_vector(const PermutationSpec& p, std::span<const Scalar> x) {
  if (p.size() != x.size()) throw dimension_error("permutation apply: dimension mismatch");
  Vector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[p.perm[i]];
  return y;
}

// Structure detection. Deviations are relative to max|a_ij| (absolute when A = 0).

namespace detail {
inline double relative_to_max(double dev, const DenseMatrix& a) {
  const double m = a.max_abs();
  return m > 0.0 ? dev / m : dev;
}
}  // namespace detail

inline double toeplitz_deviation(const DenseMatrix& a) {
  double dev = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) dev = std::max(dev, std::abs(a(i, j) - a(i - 1, j - 1)));
  return detail::relative_to_max(dev, a);
}

inline double hankel_deviation(const DenseMatrix& a) {
  double dev = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j)
      dev = std::max(dev, std::abs(a(i, j) - a(i - 1, j + 1)));
  return detail::relative_to_max(dev, a);
}

inline double circulant_deviation(const DenseMatrix& a) {
  double dev = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      dev = std::max(dev, std::abs(a(i, j) - a((i + 1) % n, (j + 1) % n)));
  return detail::relative_to_max(dev, a);
}

inline double symmetric_deviation(const DenseMatrix& a) {
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) dev = std::max(dev, std::abs(a(i, j) - a(j, i)));
  return detail::relative_to_max(dev, a);
}

inline double persymmetric_deviation(const DenseMatrix& a) {
  double dev = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      dev = std::max(dev, std::abs(a(i, j) - a(n - 1 - j, n - 1 - i)));
  return detail::relative_to_max(dev, a);
}

inline bool is_toeplitz(const DenseMatrix& a, double tol = default_tolerance) {
  return toeplitz_deviation(a) <= tol;
}
inline bool is_hankel(const DenseMatrix& a, double tol = default_tolerance) {
  return hankel_deviation(a) <= tol;
}
inline bool is_circulant(const DenseMatrix& a, double tol = default_tolerance) {
  return circulant_deviation(a) <= tol;
}

/// Reads the diagonals off the first row and column. Throws when A is not
/// Toeplitz to within `tol`.
inline ToeplitzSpec toeplitz_from_dense(const DenseMatrix& a, double tol = default_tolerance) {
  if (!is_toeplitz(a, tol)) throw invalid_value_error("matrix is not Toeplitz");
  const std::size_t n = a.size();
  ToeplitzSpec t(n);
  for (std::size_t j = 0; j < n; ++j) t.at(static_cast<long>(j)) = a(0, j);
  for (std::size_t i = 1; i < n; ++i) t.at(-static_cast<long>(i)) = a(i, 0);
  return t;
}

inline HankelSpec hankel_from_dense(const DenseMatrix& a, double tol = default_tolerance) {
  if (!is_hankel(a, tol)) throw invalid_value_error("matrix is not Hankel");
  const std::size_t n = a.size();
  HankelSpec h(n);
  for (std::size_t j = 0; j < n; ++j) h.antidiag[j] = a(0, j);
  for (std::size_t i = 1; i < n; ++i) h.antidiag[n - 1 + i] = a(i, n - 1);
  return h;
}

}  // namespace toepfact
