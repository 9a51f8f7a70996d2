#pragma once

#include <bit>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "structured.hpp"

namespace toepfact {

/// y = T x by embedding T in a circulant of length 2^ceil(log2(2n-1)) and
/// convolving with the FFT. O(n log n).
inline Vector toeplitz_matvec(const ToeplitzSpec& t, std::span<const Scalar> x) {
  const std::size_t n = t.n;
  if (x.size() != n)
    throw dimension_error("toeplitz_matvec: vector has length " + std::to_string(x.size()) +
                          ", matrix is " + std::to_string(n));
  if (n == 1) return {t.diag[0] * x[0]};

  const std::size_t len = std::bit_ceil(2 * n - 1);
  // First column of the circulant: c[m] = T(m, 0) for m < n, wrapping the
  // superdiagonals into the tail.
  Vector c(len), xp(len);
  for (std::size_t m = 0; m < n; ++m) c[m] = t.at(-static_cast<long>(m));
  for (std::size_t m = 1; m < n; ++m) c[len - m] = t.at(static_cast<long>(m));
  std::copy(x.begin(), x.end(), xp.begin());

  fft_inplace(c);
  fft_inplace(xp);
  for (std::size_t k = 0; k < len; ++k) c[k] *= xp[k];
  fft_inplace(c, true);
  c.resize(n);
  return c;
}

/// Relative singularity threshold for the diagonal of an upper-triangular Toeplitz matrix.
inline constexpr double singular_threshold = 1e-12;

inline bool is_upper_triangular(const ToeplitzSpec& t) {
  for (long k = 1; k < static_cast<long>(t.n); ++k)
    if (t.at(-k) != Scalar{}) return false;
  return true;
}

/// Inverse of an upper-triangular Toeplitz matrix.
///
/// W = sum_k w_k B_k is a polynomial in the nilpotent shift B_1, so W^{-1} is
/// the truncated power-series reciprocal of w_0 + w_1 z + ... + w_{n-1} z^{n-1}:
///   v_0 = 1/w_0,  v_m = -(1/w_0) * sum_{k=1..m} w_k v_{m-k}.
inline ToeplitzSpec ut_toeplitz_inverse(const ToeplitzSpec& w) {
  const std::size_t n = w.n;
  if (!is_upper_triangular(w))
    throw invalid_value_error("ut_toeplitz_inverse: matrix has nonzero subdiagonals");

  double wmax = 0.0;
  for (const auto& z : w.diag) wmax = std::max(wmax, std::abs(z));
  const Scalar w0 = w.at(0);
  if (std::abs(w0) < singular_threshold * wmax || w0 == Scalar{})
    throw singular_factor("ut_toeplitz_inverse: diagonal entry is (numerically) zero");

  ToeplitzSpec v(n);
  const Scalar inv0 = 1.0 / w0;
  v.at(0) = inv0;
  for (std::size_t m = 1; m < n; ++m) {
    Scalar s{};
    for (std::size_t k = 1; k <= m; ++k)
      s += w.at(static_cast<long>(k)) * v.at(static_cast<long>(m - k));
    v.at(static_cast<long>(m)) = -inv0 * s;
  }
  return v;
}

/// Which side the exchange matrix J multiplies from.
enum class Side { left, right };

/// Hankel matrix J*T (side = left) or T*J (side = right).
///
/// (J T)(i, j) = t_{i+j-(n-1)}, so the anti-diagonal array equals the diagonal
/// array; (T J)(i, j) = t_{(n-1)-(i+j)} reverses it.
inline HankelSpec hankel_from_toeplitz(const ToeplitzSpec& t, Side side) {
  HankelSpec h(t.n);
  if (side == Side::left)
    h.antidiag = t.diag;
  else
    h.antidiag.assign(t.diag.rbegin(), t.diag.rend());
  return h;
}

/// Inverse of hankel_from_toeplitz: the Toeplitz T with H = J T (left) or H = T J (right).
inline ToeplitzSpec toeplitz_from_hankel(const HankelSpec& h, Side side) {
  ToeplitzSpec t(h.n);
  if (side == Side::left)
    t.diag = h.antidiag;
  else
    t.diag.assign(h.antidiag.rbegin(), h.antidiag.rend());
  return t;
}

/// Hankel matrix-vector product through H = J T.
inline Vector hankel_matvec(const HankelSpec& h, std::span<const Scalar> x) {
  auto y = toeplitz_matvec(toeplitz_from_hankel(h, Side::left), x);
  std::reverse(y.begin(), y.end());
  return y;
}

/// A * T in O(n^3) without densifying T.
inline DenseMatrix multiply(const DenseMatrix& a, const ToeplitzSpec& t) {
  const std::size_t n = a.size();
  if (t.n != n) throw dimension_error("multiply: dimension mismatch");
  DenseMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ai = a.row(i);
    auto ci = c.row(i);
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar aik = ai[k];
      if (aik == Scalar{}) continue;
      // row k of T is diag[(j - k) + n - 1] for j = 0..n-1
      const Scalar* tk = t.diag.data() + (n - 1 - k);
      for (std::size_t j = 0; j < n; ++j) ci[j] += aik * tk[j];
    }
  }
  return c;
}

inline DenseMatrix multiply(const DenseMatrix& a, const HankelSpec& h) {
  const std::size_t n = a.size();
  if (h.n != n) throw dimension_error("multiply: dimension mismatch");
  DenseMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ai = a.row(i);
    auto ci = c.row(i);
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar aik = ai[k];
      if (aik == Scalar{}) continue;
      const Scalar* hk = h.antidiag.data() + k;
      for (std::size_t j = 0; j < n; ++j) ci[j] += aik * hk[j];
    }
  }
  return c;
}

inline DenseMatrix multiply(const DenseMatrix& a, const PermutationSpec& p) {
  return permute_columns(a, p);
}

}  // namespace toepfact
