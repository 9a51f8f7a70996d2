#pragma once

// Toeplitz-times-permutation decomposition by Gaussian elimination:
//
//   A = T_1 T_2 P_1 T_3 T_4 P_2 ... T_{2n-1} T_{2n} P_n
//
// 1. Eliminate without pivoting to get A = (I + v_1 e_1^T) ... (I + v_n e_n^T).
// 2. Move each column update to column 1: I + v_k e_k^T = Pi_k (I + w_k e_1^T) Pi_k,
//    Pi_k the transposition (1 k), w_k = Pi_k v_k.
// 3. Split I + w e_1^T = W (W^{-1} + E_{n1}) with W a Toeplitz matrix whose last
//    column is w and whose inverse is Toeplitz (upper-triangular or phi-circulant).
// 4. Telescope the transpositions: P_k = Pi_k Pi_{k+1} with Pi_1 = Pi_{n+1} = I.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "chain.hpp"
#include "linalg.hpp"
#include "random.hpp"

namespace toepfact {

/// Relative pivot threshold: |pivot| < threshold * max|a_ij| is treated as zero.
inline constexpr double pivot_threshold = 1e-12;

/// The factor I + v e_k^T (`column` is the 0-based k).
struct ElementaryColumnFactor {
  std::size_t column = 0;
  Vector v;
};

inline DenseMatrix densify(const ElementaryColumnFactor& f) {
  auto a = DenseMatrix::identity(f.v.size());
  for (std::size_t i = 0; i < f.v.size(); ++i) a(i, f.column) += f.v[i];
  return a;
}

/// Pi (I + w e_1^T) Pi with Pi the transposition (1 k).
struct RecenteredFactor {
  std::size_t column = 0;
  PermutationSpec pi;
  Vector w;
};

/// W Toeplitz with last column w and V = W^{-1} + E_{n1} Toeplitz, so that
/// W V = I + w e_1^T. E_{n1} lives on diagonal -(n-1) of V. `condition` is the
/// 1-norm condition estimate ||W||_1 ||W^{-1}||_1.
struct TriangularSplit {
  ToeplitzSpec upper;
  ToeplitzSpec cofactor;
  double condition = 0.0;
};

/// How W is chosen in step 3. `triangular` is the upper-triangular W, whose inverse
/// can grow exponentially in n. `circulant` uses a phi-circulant W (|phi| = 1,
/// same first row), which is normal and diagonalized by a scaled DFT. `automatic`
/// keeps the triangular split unless its condition exceeds triangular_condition_limit.
enum class SplitPolicy { automatic, triangular, circulant };

inline constexpr double triangular_condition_limit = 1e3;

struct GeOptions {
  double pivot_threshold = toepfact::pivot_threshold;
  SplitPolicy split = SplitPolicy::automatic;
};

/// Step 1. Throws non_generic_input naming the 1-based stage when a pivot vanishes.
inline std::vector<ElementaryColumnFactor> elementary_column_factorize(
    const DenseMatrix& a, double threshold = pivot_threshold) {
  const std::size_t n = a.size();
  if (n == 0) throw dimension_error("elementary_column_factorize: empty matrix");
  if (!a.all_finite()) throw invalid_value_error("elementary_column_factorize: non-finite entry");

  const double scale = a.max_abs();
  DenseMatrix m = a;
  Vector pivot_row(n);
  std::vector<ElementaryColumnFactor> out;
  out.reserve(n);

  for (std::size_t k = 0; k < n; ++k) {
    const Scalar pivot = m(k, k);
    if (pivot == Scalar{} || std::abs(pivot) < threshold * scale)
      throw non_generic_input("zero pivot at elimination stage " + std::to_string(k + 1) +
                                  " (input is not generic; try --retry)",
                              k + 1);

    ElementaryColumnFactor f{k, m.column(k)};
    f.v[k] -= 1.0;

    // m <- (I + v e_k^T)^{-1} m = m - v (e_k^T m) / pivot; only columns > k change.
    for (std::size_t j = k + 1; j < n; ++j) pivot_row[j] = m(k, j) / pivot;
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar vi = f.v[i];
      if (vi == Scalar{}) continue;
      auto row = m.row(i);
      for (std::size_t j = k + 1; j < n; ++j) row[j] -= vi * pivot_row[j];
    }
    out.push_back(std::move(f));
  }
  return out;
}

/// Step 2.
inline RecenteredFactor recenter(const ElementaryColumnFactor& f) {
  const std::size_t n = f.v.size();
  auto pi = PermutationSpec::transposition(n, 0, f.column);
  auto w = permute_vector(pi, f.v);
  return {f.column, std::move(pi), std::move(w)};
}

namespace detail {
inline double toeplitz_one_norm_bound(const ToeplitzSpec& t) {
  double s = 0.0;
  for (const auto& z : t.diag) s += std::abs(z);
  return s;
}

inline void check_split_input(std::span<const Scalar> w, std::size_t stage, double threshold) {
  if (w.empty()) throw dimension_error("split: empty vector");
  double wmax = 0.0;
  for (const auto& z : w) wmax = std::max(wmax, std::abs(z));
  const Scalar lead = w.back();
  if (lead == Scalar{} || std::abs(lead) < threshold * wmax)
    throw non_generic_input("last entry of the recentred column vanishes" +
                                (stage ? " at stage " + std::to_string(stage) : std::string{}) +
                                " (input is not generic; try --retry)",
                            stage);
}
}  // namespace detail

/// Step 3 with W upper-triangular: first row (w_n, w_{n-1}, ..., w_1).
/// `stage` is only used to label the error.
inline TriangularSplit triangular_split(std::span<const Scalar> w, std::size_t stage = 0,
                                        double threshold = singular_threshold) {
  detail::check_split_input(w, stage, threshold);
  const std::size_t n = w.size();
  ToeplitzSpec upper(n);
  for (std::size_t m = 0; m < n; ++m) upper.at(static_cast<long>(m)) = w[n - 1 - m];

  ToeplitzSpec cofactor = ut_toeplitz_inverse(upper);
  const double cond = detail::toeplitz_one_norm_bound(upper) * detail::toeplitz_one_norm_bound(cofactor);
  cofactor.at(-static_cast<long>(n) + 1) += 1.0;
  return {std::move(upper), std::move(cofactor), std::isfinite(cond) ? cond : HUGE_VAL};
}

/// Step 3 with W = sum_m c_m S^m, S the shift with S(n-1, 0) = phi = exp(i theta), and
/// c_m = w_{n-m} as in the triangular case. W^{-1} is again a polynomial in S, found by
/// inverting p(x) = sum c_m x^m at the n roots of phi. Tries `angles` values of theta
/// and keeps the best conditioned.
inline TriangularSplit circulant_split(std::span<const Scalar> w, std::size_t stage = 0,
                                       std::size_t angles = 16) {
  const std::size_t n = w.size();
  if (n == 0) throw dimension_error("split: empty vector");
  double best_cond = HUGE_VAL, best_theta = 0.0;
  Vector best_inv;
  Vector x(n);
  for (std::size_t a = 0; a < std::max<std::size_t>(angles, 1); ++a) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(angles);
    for (std::size_t m = 0; m < n; ++m)
      x[m] = w[n - 1 - m] * std::polar(1.0, theta * static_cast<double>(m) / static_cast<double>(n));
    fft_inplace(x);
    double lo = HUGE_VAL, hi = 0.0;
    for (const auto& z : x) {
      lo = std::min(lo, std::abs(z));
      hi = std::max(hi, std::abs(z));
    }
    if (lo == 0.0 || !(hi / lo < best_cond)) continue;
    best_cond = hi / lo;
    best_theta = theta;
    for (auto& z : x) z = 1.0 / z;
    fft_inplace(x, true);
    best_inv = x;
  }
  if (best_inv.empty() || best_cond > 1.0 / singular_threshold)
    throw non_generic_input("recentred column gives a singular circulant split" +
                                (stage ? " at stage " + std::to_string(stage) : std::string{}) +
                                " (input is not generic; try --retry)",
                            stage);

  const Scalar phi = std::polar(1.0, best_theta);
  ToeplitzSpec upper(n), cofactor(n);
  for (std::size_t m = 0; m < n; ++m) {
    const Scalar q = best_inv[m] * std::polar(1.0, -best_theta * static_cast<double>(m) / static_cast<double>(n));
    upper.at(static_cast<long>(m)) = w[n - 1 - m];
    cofactor.at(static_cast<long>(m)) = q;
    if (m > 0) {
      upper.at(static_cast<long>(m) - static_cast<long>(n)) = phi * w[n - 1 - m];
      cofactor.at(static_cast<long>(m) - static_cast<long>(n)) = phi * q;
    }
  }
  cofactor.at(-static_cast<long>(n) + 1) += 1.0;
  return {std::move(upper), std::move(cofactor), best_cond};
}

inline TriangularSplit split_column(std::span<const Scalar> w, std::size_t stage, SplitPolicy policy,
                                    double threshold = singular_threshold) {
  switch (policy) {
    case SplitPolicy::triangular:
      return triangular_split(w, stage, threshold);
    case SplitPolicy::circulant:
      return circulant_split(w, stage);
    case SplitPolicy::automatic:
      break;
  }
  auto tri = triangular_split(w, stage, threshold);
  if (tri.condition <= triangular_condition_limit) return tri;
  auto circ = circulant_split(w, stage);
  return circ.condition < tri.condition ? circ : tri;
}

/// 2n Toeplitz factors and n permutations, in the order T T P T T P ... T T P.
inline FactorChain toeplitz_permutation_decompose(const DenseMatrix& a, const GeOptions& opts = {}) {
  const std::size_t n = a.size();
  const auto columns = elementary_column_factorize(a, opts.pivot_threshold);

  FactorChain chain;
  chain.n = n;
  chain.factors.reserve(3 * n);
  std::vector<RecenteredFactor> centred;
  centred.reserve(n);
  for (const auto& f : columns) centred.push_back(recenter(f));

  for (std::size_t k = 0; k < n; ++k) {
    auto split = split_column(centred[k].w, k + 1, opts.split);
    chain.factors.emplace_back(std::move(split.upper));
    chain.factors.emplace_back(std::move(split.cofactor));
    // P_k = Pi_k Pi_{k+1}, with Pi_{n+1} = I.
    chain.factors.emplace_back(k + 1 < n ? centred[k].pi.then(centred[k + 1].pi) : centred[k].pi);
  }
  return chain;
}

/// Rewrites a Toeplitz/permutation chain from toeplitz_permutation_decompose as
///   J H_1 H_2 P'_1 ... H_{2n-1} H_{2n} P'_n
/// with J the exchange matrix, H_i = J T_i (odd i), H_i = T_i J (even i),
/// P'_k = J P_k J for k < n and P'_n = J P_n.
inline FactorChain hankel_chain_from_toeplitz_chain(const FactorChain& toeplitz_chain) {
  const std::size_t n = toeplitz_chain.n;
  const auto J = PermutationSpec::anti_identity(n);
  FactorChain chain;
  chain.n = n;
  chain.leading_permutation = J;
  chain.factors.reserve(toeplitz_chain.factors.size());

  std::size_t toeplitz_index = 0;
  const std::size_t total_perms = toeplitz_chain.count_permutation();
  std::size_t perm_index = 0;
  for (const auto& f : toeplitz_chain.factors) {
    if (const auto* t = std::get_if<ToeplitzSpec>(&f)) {
      ++toeplitz_index;
      chain.factors.emplace_back(
          hankel_from_toeplitz(*t, toeplitz_index % 2 == 1 ? Side::left : Side::right));
    } else if (const auto* p = std::get_if<PermutationSpec>(&f)) {
      ++perm_index;
      chain.factors.emplace_back(perm_index < total_perms ? J.then(*p).then(J) : J.then(*p));
    } else {
      throw invalid_value_error("hankel_chain_from_toeplitz_chain: input already contains Hankel factors");
    }
  }
  return chain;
}

/// 2n Hankel factors, n permutations and a leading exchange matrix.
inline FactorChain hankel_permutation_decompose(const DenseMatrix& a, const GeOptions& opts = {}) {
  return hankel_chain_from_toeplitz_chain(toeplitz_permutation_decompose(a, opts));
}

enum class FactorKind { toeplitz, hankel };

/// Fallback for non-generic inputs (identity, permutations, ...): draw a seeded
/// random Toeplitz R, decompose R^{-1} and R A separately and concatenate, so
/// A = R^{-1} (R A). The result has twice the factors of the plain decomposition.
inline FactorChain ge_decompose_with_retry(const DenseMatrix& a, FactorKind kind,
                                           std::uint64_t seed, const GeOptions& opts = {}) {
  const std::size_t n = a.size();
  Rng rng(derive_seed(seed, 0x7e7));
  const DenseMatrix r = densify(rng.toeplitz(n));
  const DenseMatrix r_inv = inverse(r);

  auto decompose = [&](const DenseMatrix& m) {
    return kind == FactorKind::toeplitz ? toeplitz_permutation_decompose(m, opts)
                                        : hankel_permutation_decompose(m, opts);
  };
  FactorChain left = decompose(r_inv);
  FactorChain right = decompose(r * a);

  if (right.leading_permutation) {
    // Fold the second leading J into the last permutation of the left chain.
    auto& last = std::get<PermutationSpec>(left.factors.back());
    last = last.then(*right.leading_permutation);
  }
  for (auto& f : right.factors) left.factors.push_back(std::move(f));
  return left;
}

}  // namespace toepfact
