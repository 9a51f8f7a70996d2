#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "dense.hpp"

namespace toepfact {

using EigenMatrix = Eigen::MatrixXcd;
using EigenVector = Eigen::VectorXcd;

inline EigenMatrix to_eigen(const DenseMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  EigenMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m;
}

inline DenseMatrix from_eigen(const EigenMatrix& m) {
  if (m.rows() != m.cols()) throw dimension_error("from_eigen: matrix is not square");
  DenseMatrix a(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return a;
}

/// Dense inverse by LU with partial pivoting.
inline DenseMatrix inverse(const DenseMatrix& a) {
  Eigen::PartialPivLU<EigenMatrix> lu(to_eigen(a));
  return from_eigen(lu.inverse());
}

inline Eigen::VectorXd singular_values(const EigenMatrix& m) {
  return Eigen::BDCSVD<EigenMatrix>(m).singularValues();
}

/// Number of singular values above rel_threshold * sigma_max.
inline std::size_t numerical_rank(const EigenMatrix& m, double rel_threshold) {
  const auto s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) r += s(k) > rel_threshold * s(0);
  return r;
}

}  // namespace toepfact
