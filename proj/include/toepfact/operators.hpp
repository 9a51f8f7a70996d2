#pragma once

#include <stdexcept>
#include <string_view>

#include "dense.hpp"

namespace toepfact {

/// The four index-permuting operators on square matrices (1-based indices):
///   transpose  A^T(i,j) = a(j,i)
///   rotate     A^R(i,j) = a(j, n+1-i)   (quarter turn counter-clockwise)
///   swap       A^S(i,j) = a(i, n+1-j)   (reverse column order)
///   flip       A^F(i,j) = a(n+1-i, j)   (reverse row order)
/// With the exchange matrix J: A^R = J A^T, A^S = A J, A^F = J A.
enum class MatrixOp { transpose, rotate, swap, flip };

inline DenseMatrix apply_operator(const DenseMatrix& a, MatrixOp op) {
  const std::size_t n = a.size();
  DenseMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      switch (op) {
        case MatrixOp::transpose: out(i, j) = a(j, i); break;
        case MatrixOp::rotate: out(i, j) = a(j, n - 1 - i); break;
        case MatrixOp::swap: out(i, j) = a(i, n - 1 - j); break;
        case MatrixOp::flip: out(i, j) = a(n - 1 - i, j); break;
      }
    }
  }
  return out;
}

inline MatrixOp parse_operator(char c) {
  switch (c) {
    case 'T': return MatrixOp::transpose;
    case 'R': return MatrixOp::rotate;
    case 'S': return MatrixOp::swap;
    case 'F': return MatrixOp::flip;
    default: throw invalid_value_error(std::string("unknown matrix operator '") + c + "'");
  }
}

/// Applies a word of operators left to right: apply_operators(A, "SR") is A^{SR} = (A^S)^R.
inline DenseMatrix apply_operators(DenseMatrix a, std::string_view word) {
  for (char c : word) a = apply_operator(a, parse_operator(c));
  return a;
}

}  // namespace toepfact
