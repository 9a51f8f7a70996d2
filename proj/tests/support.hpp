#pragma once

#include <cmath>

#include <toepfact/toepfact.hpp>

namespace tfs {

using namespace toepfact;

inline double max_entry_error(const DenseMatrix& a, const DenseMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline DenseMatrix exchange(std::size_t n) { return densify(PermutationSpec::anti_identity(n)); }

inline DenseMatrix one_to_nine() { return DenseMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}; }

/// The integer 5 x 5 matrix of the worked GE example.
inline DenseMatrix ge_example_matrix() {
  return DenseMatrix{{2, 5, 2, 5, 3}, {4, 5, 5, 2, 2}, {2, 3, 2, 1, 5}, {3, 1, 5, 2, 3}, {4, 1, 2, 4, 3}};
}

/// Toeplitz matrix from its first row and first column (real entries).
inline ToeplitzSpec toeplitz_rc(std::initializer_list<double> row, std::initializer_list<double> col) {
  Vector r(row.begin(), row.end()), c(col.begin(), col.end());
  return ToeplitzSpec::from_row_col(r, c);
}

/// Permutation from cycle notation (a -> b -> c means P e_a = e_b ...), 1-based.
inline PermutationSpec from_cycle(std::size_t n, std::initializer_list<std::size_t> cycle) {
  // sigma(a) = b; P e_a = e_b means P(b, a) = 1, i.e. perm[b] = a.
  std::vector<std::size_t> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = i;
  std::vector<std::size_t> c(cycle);
  for (std::size_t k = 0; k < c.size(); ++k) sigma[c[k] - 1] = c[(k + 1) % c.size()] - 1;
  std::vector<std::size_t> perm(n);
  for (std::size_t a = 0; a < n; ++a) perm[sigma[a]] = a;
  return PermutationSpec(std::move(perm));
}

/// The 3 x 3 pair printed for the r = 2 example (4-5 digits).
inline DenseMatrix printed_pair_left() {
  return densify(toeplitz_rc({2.2222, 0.8889, -0.4444}, {2.2222, 3.5556, 4.8889}));
}
inline DenseMatrix printed_pair_right() {
  return densify(toeplitz_rc({0.25, 1.0, 1.0}, {0.25, 1.0, 1.0}));
}

}  // namespace tfs
