#pragma once

// Linear-quadratic system for two-factor Toeplitz decompositions.
//
// For X = [x_{j-i}], Y = [y_{j-i}] the product map factors through the Segre
// embedding z_{km} = x_k y_m (k, m in -(n-1)..n-1) followed by the linear
// projection (XY)_{ij} = sum over l of z_{l-i, j-l}. A decomposition of A is a
// point z with pi(z) = A (linear rows) whose (2n-1) x (2n-1) flattening has
// rank one (all 2 x 2 minors vanish).

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "structured.hpp"

namespace toepfact {

/// One monomial coeff * x[i] * x[j] (i <= j) of a quadratic form.
struct QuadraticTerm {
  std::size_t i = 0;
  std::size_t j = 0;
  Scalar coeff;
};

struct LinearQuadraticSystem {
  /// Dimension 2n-1 of one factor's parameter vector; unknowns are z_{km}.
  std::size_t side = 0;
  std::size_t num_unknowns = 0;
  /// Rows c_i of C (dense, length num_unknowns); the equations are c_i . x = d_i.
  std::vector<Vector> linear_rows;
  Vector rhs;
  /// x^T E_j x = 0, each E_j stored as its upper-triangular monomials.
  std::vector<std::vector<QuadraticTerm>> quadratics;

  long offset() const noexcept { return static_cast<long>(side / 2); }

  /// Flat index of z_{km}, row-major in (k, m).
  std::size_t index(long k, long m) const {
    return static_cast<std::size_t>((k + offset()) * static_cast<long>(side) + (m + offset()));
  }

  /// Variable name for a flat index, e.g. z_0_m1 for z_{0,-1}.
  std::string variable(std::size_t flat) const {
    auto label = [](long v) { return v < 0 ? "m" + std::to_string(-v) : std::to_string(v); };
    const long k = static_cast<long>(flat / side) - offset();
    const long m = static_cast<long>(flat % side) - offset();
    return "z_" + label(k) + "_" + label(m);
  }
};

/// Symmetric matrix of a quadratic form (off-diagonal coefficients split in half).
inline std::vector<Vector> dense_form(const std::vector<QuadraticTerm>& q, std::size_t dim) {
  std::vector<Vector> e(dim, Vector(dim));
  for (const auto& t : q) {
    if (t.i == t.j) {
      e[t.i][t.j] += t.coeff;
    } else {
      e[t.i][t.j] += 0.5 * t.coeff;
      e[t.j][t.i] += 0.5 * t.coeff;
    }
  }
  return e;
}

inline Scalar evaluate_quadratic(const std::vector<QuadraticTerm>& q, std::span<const Scalar> x) {
  Scalar s{};
  for (const auto& t : q) s += t.coeff * x[t.i] * x[t.j];
  return s;
}

inline Vector evaluate_linear(const LinearQuadraticSystem& sys, std::span<const Scalar> x) {
  Vector out(sys.linear_rows.size());
  for (std::size_t r = 0; r < sys.linear_rows.size(); ++r) {
    Scalar s{};
    for (std::size_t k = 0; k < x.size(); ++k) s += sys.linear_rows[r][k] * x[k];
    out[r] = s;
  }
  return out;
}

/// Outer product x (x) y of two Toeplitz parameter vectors, flattened row-major.
inline Vector segre_embed(const ToeplitzSpec& x, const ToeplitzSpec& y) {
  if (x.n != y.n) throw dimension_error("segre_embed: dimension mismatch");
  Vector z;
  z.reserve(x.diag.size() * y.diag.size());
  for (const auto& xk : x.diag)
    for (const auto& ym : y.diag) z.push_back(xk * ym);
  return z;
}

/// Builds pi^{-1}(A) together with all 2 x 2 minors of the flattening. Only r = 2 is
/// supported.
inline LinearQuadraticSystem build_linear_quadratic_system(const DenseMatrix& a, std::size_t r = 2) {
  if (r != 2)
    throw unsupported_arity("linear-quadratic system is only built for r = 2; use "
                            "gauss_newton_decompose for r = " + std::to_string(r));
  const std::size_t n = a.size();
  if (n == 0) throw dimension_error("build_linear_quadratic_system: empty matrix");

  LinearQuadraticSystem sys;
  sys.side = 2 * n - 1;
  sys.num_unknowns = sys.side * sys.side;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector row(sys.num_unknowns);
      for (std::size_t l = 0; l < n; ++l) {
        const long k = static_cast<long>(l) - static_cast<long>(i);
        const long m = static_cast<long>(j) - static_cast<long>(l);
        row[sys.index(k, m)] += 1.0;
      }
      sys.linear_rows.push_back(std::move(row));
      sys.rhs.push_back(a(i, j));
    }
  }

  const long lo = -sys.offset(), hi = sys.offset();
  for (long k = lo; k <= hi; ++k)
    for (long k2 = k + 1; k2 <= hi; ++k2)
      for (long m = lo; m <= hi; ++m)
        for (long m2 = m + 1; m2 <= hi; ++m2) {
          auto term = [&](long ka, long ma, long kb, long mb, double c) {
            std::size_t p = sys.index(ka, ma), q = sys.index(kb, mb);
            if (p > q) std::swap(p, q);
            return QuadraticTerm{p, q, c};
          };
          sys.quadratics.push_back({term(k, m, k2, m2, 1.0), term(k, m2, k2, m, -1.0)});
        }
  return sys;
}

namespace detail {
inline std::string format_coeff(const Scalar& c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g%+.17g*I)", c.real(), c.imag());
  return buf;
}
}  // namespace detail

/// Plain-text listing, one polynomial (implicitly "= 0") per line: all quadrics first,
/// then the linear rows as sum(c * z) - d. Coefficients are printed as (re+im*I) with 17
/// significant digits, so identical systems give identical bytes.
inline std::string export_system(const LinearQuadraticSystem& sys) {
  std::ostringstream out;
  for (const auto& q : sys.quadratics) {
    bool first = true;
    for (const auto& t : q) {
      if (!first) out << " + ";
      first = false;
      out << detail::format_coeff(t.coeff) << '*' << sys.variable(t.i) << '*' << sys.variable(t.j);
    }
    out << '\n';
  }
  for (std::size_t r = 0; r < sys.linear_rows.size(); ++r) {
    bool first = true;
    for (std::size_t k = 0; k < sys.num_unknowns; ++k) {
      const Scalar c = sys.linear_rows[r][k];
      if (c == Scalar{}) continue;
      if (!first) out << " + ";
      first = false;
      out << detail::format_coeff(c) << '*' << sys.variable(k);
    }
    if (first) out << "(0+0*I)";
    out << " - " << detail::format_coeff(sys.rhs[r]) << '\n';
  }
  return out.str();
}

}  // namespace toepfact
