#pragma once

// Minimal decompositions A = T_1 ... T_r with r = floor(n/2) + 1 structured factors.
//
// The product map rho_r sends an r-tuple of Toeplitz (or Hankel) matrices to its
// product. Its Jacobian is the n^2 x r(2n-1) matrix whose column for factor i and
// basis element b is vec(T_1 ... T_{i-1} B_b T_{i+1} ... T_r). The solver is a
// Levenberg-damped Gauss-Newton iteration on F = vec(rho_r(tau)) - vec(A) with
// seeded random restarts.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "random.hpp"
#include "toeplitz_ops.hpp"

namespace toepfact {

/// Smallest factor count that decomposes a generic n x n matrix.
constexpr std::size_t minimal_factor_count(std::size_t n) { return n / 2 + 1; }

// How each structure exposes its parameters and basis.
template <class Spec>
struct structure_traits;

template <>
struct structure_traits<ToeplitzSpec> {
  static constexpr const char* name = "toeplitz";
  static Vector& params(ToeplitzSpec& t) { return t.diag; }
  static const Vector& params(const ToeplitzSpec& t) { return t.diag; }
  /// Column holding the one of basis element b in row a (b indexes diagonal b-(n-1)).
  static std::optional<std::size_t> basis_column(std::size_t n, std::size_t b, std::size_t a) {
    const long c = static_cast<long>(a) + static_cast<long>(b) - static_cast<long>(n) + 1;
    if (c < 0 || c >= static_cast<long>(n)) return std::nullopt;
    return static_cast<std::size_t>(c);
  }
};

template <>
struct structure_traits<HankelSpec> {
  static constexpr const char* name = "hankel";
  static Vector& params(HankelSpec& h) { return h.antidiag; }
  static const Vector& params(const HankelSpec& h) { return h.antidiag; }
  static std::optional<std::size_t> basis_column(std::size_t n, std::size_t b, std::size_t a) {
    if (b < a || b - a >= n) return std::nullopt;
    return b - a;
  }
};

template <class Spec>
struct StructuredTuple {
  std::size_t n = 0;
  std::vector<Spec> factors;

  std::size_t r() const noexcept { return factors.size(); }

  void validate() const {
    if (factors.empty()) throw dimension_error("tuple must hold at least one factor");
    for (const auto& f : factors)
      if (f.n != n) throw dimension_error("tuple factors must share the dimension");
  }
};

using ToeplitzTuple = StructuredTuple<ToeplitzSpec>;
using HankelTuple = StructuredTuple<HankelSpec>;

template <class Spec>
DenseMatrix compose_rho(const StructuredTuple<Spec>& tuple) {
  tuple.validate();
  DenseMatrix acc = densify(tuple.factors.front());
  for (std::size_t i = 1; i < tuple.r(); ++i) acc = multiply(acc, tuple.factors[i]);
  return acc;
}

/// Differential of rho_r. Rows are vec (row-major) of the n x n output, columns are
/// (factor i, basis b) at index i * (2n - 1) + b.
struct JacobianMatrix {
  std::size_t n = 0;
  std::size_t r = 0;
  EigenMatrix m;

  Eigen::Index column_index(std::size_t factor, std::size_t basis) const {
    return static_cast<Eigen::Index>(factor * (2 * n - 1) + basis);
  }
};

template <class Spec>
JacobianMatrix jacobian_rho(const StructuredTuple<Spec>& tuple) {
  using traits = structure_traits<Spec>;
  tuple.validate();
  const std::size_t n = tuple.n, r = tuple.r(), nb = 2 * n - 1;

  // prefix[i] = T_1 ... T_{i-1}, suffix[i] = T_{i+1} ... T_r
  std::vector<DenseMatrix> prefix(r), suffix(r);
  prefix[0] = DenseMatrix::identity(n);
  for (std::size_t i = 1; i < r; ++i) prefix[i] = multiply(prefix[i - 1], tuple.factors[i - 1]);
  suffix[r - 1] = DenseMatrix::identity(n);
  for (std::size_t i = r - 1; i-- > 0;) suffix[i] = densify(tuple.factors[i + 1]) * suffix[i + 1];

  JacobianMatrix jac{n, r, EigenMatrix::Zero(static_cast<Eigen::Index>(n * n),
                                            static_cast<Eigen::Index>(r * nb))};
  for (std::size_t i = 0; i < r; ++i) {
    const auto& L = prefix[i];
    const auto& R = suffix[i];
    for (std::size_t b = 0; b < nb; ++b) {
      const auto col = jac.column_index(i, b);
      // (L E_b R)(p, q) = sum_a L(p, a) R(c(a), q) over rows a where E_b has a one.
      for (std::size_t a = 0; a < n; ++a) {
        const auto c = traits::basis_column(n, b, a);
        if (!c) continue;
        const auto rrow = R.row(*c);
        for (std::size_t p = 0; p < n; ++p) {
          const Scalar lpa = L(p, a);
          if (lpa == Scalar{}) continue;
          for (std::size_t q = 0; q < n; ++q)
            jac.m(static_cast<Eigen::Index>(p * n + q), col) += lpa * rrow[q];
        }
      }
    }
  }
  return jac;
}

/// The special tuple (T_{n-r}, ..., T_{n-1}) with T_{n-i} = B_0 + t_{n-i} (B_{n-i} - B_{-(n-i)}),
/// ordered as in the product T_{n-r} ... T_{n-1}.
///
/// `t` lists t_{n-1}, t_{n-2}, ..., i.e. t[i-1] = t_{n-i}. It may hold r values, or r-1
/// values in which case t_{n-r} = 0 (that parameter never enters the nonvanishing minor).
inline ToeplitzTuple certificate_point(std::size_t n, std::span<const Scalar> t) {
  if (n < 1) throw dimension_error("certificate_point: n must be positive");
  const std::size_t r = minimal_factor_count(n);
  if (t.size() != r && t.size() + 1 != r)
    throw dimension_error("certificate_point: expected " + std::to_string(r) + " or " +
                          std::to_string(r - 1) + " t-values");
  ToeplitzTuple tuple{n, {}};
  tuple.factors.reserve(r);
  for (std::size_t q = 0; q < r; ++q) {
    const std::size_t i = r - q;
    const long k = static_cast<long>(n - i);
    const Scalar ti = i - 1 < t.size() ? t[i - 1] : Scalar{};
    ToeplitzSpec f = shift_basis(0, n);
    if (k > 0) {
      f.at(k) += ti;
      f.at(-k) -= ti;
    }
    tuple.factors.push_back(std::move(f));
  }
  return tuple;
}

/// Relative singular-value threshold for the numerical rank of the Jacobian.
inline constexpr double rank_threshold = 1e-8;

struct RankCertificate {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t rank = 0;
  std::size_t required_rank = 0;
  /// sigma_{n^2} / sigma_max, the margin above the rank threshold.
  double smallest_ratio = 0.0;
  /// (r - 1)(2n - 1) < n^2: one factor fewer cannot reach full dimension.
  bool sharp = false;
  bool pass = false;
};

/// Full-rank check of the product-map Jacobian at the certificate point, plus the
/// dimension count showing r - 1 factors are too few.
inline RankCertificate rank_certificate(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw dimension_error("rank_certificate: n must be at least 2");
  const std::size_t r = minimal_factor_count(n);
  Rng rng(seed);
  const Vector t = rng.complex_vector(r);
  const auto jac = jacobian_rho(certificate_point(n, t));
  const auto s = singular_values(jac.m);

  RankCertificate rep;
  rep.n = n;
  rep.r = r;
  rep.required_rank = n * n;
  for (Eigen::Index k = 0; k < s.size(); ++k) rep.rank += s(k) > rank_threshold * s(0);
  if (static_cast<std::size_t>(s.size()) >= n * n)
    rep.smallest_ratio = s(static_cast<Eigen::Index>(n * n - 1)) / s(0);
  rep.sharp = (r - 1) * (2 * n - 1) < n * n;
  rep.pass = rep.rank == rep.required_rank && rep.sharp;
  return rep;
}

struct GaussNewtonConfig {
  std::size_t max_iterations = 500;
  double residual_tolerance = 1e-8;
  std::size_t max_restarts = 20;
  std::uint64_t seed = 0;
  /// Levenberg parameter, relative to the mean diagonal of J J^H.
  double damping_initial = 1e-3;
  double damping_grow = 10.0;
  double damping_shrink = 0.1;
  double step_tolerance = 1e-14;

  void validate() const {
    if (max_iterations == 0 || max_restarts == 0)
      throw invalid_value_error("GaussNewtonConfig: iteration and restart limits must be positive");
    if (!(residual_tolerance >= 100 * std::numeric_limits<double>::epsilon()))
      throw invalid_value_error("GaussNewtonConfig: residual_tolerance below 100 * machine epsilon");
    if (!(damping_initial > 0 && damping_grow > 1 && damping_shrink > 0 && damping_shrink < 1 &&
          step_tolerance > 0))
      throw invalid_value_error("GaussNewtonConfig: damping parameters out of range");
  }
};

template <class Spec>
struct DecompositionResult {
  StructuredTuple<Spec> tuple;
  /// ||compose_rho(tuple) - A||_F / ||A||_F, recomputed from the returned factors.
  double residual = 0.0;
  std::size_t iterations = 0;
  /// Number of starts tried, including the successful one.
  std::size_t restarts = 0;
  /// r below floor(n/2) + 1: success is not expected for generic A.
  bool underparameterized = false;
};

namespace detail {

template <class Spec>
StructuredTuple<Spec> tuple_from_params(std::size_t n, std::size_t r, const EigenVector& theta) {
  using traits = structure_traits<Spec>;
  const std::size_t nb = 2 * n - 1;
  StructuredTuple<Spec> tuple{n, {}};
  for (std::size_t i = 0; i < r; ++i) {
    Spec f(n);
    auto& p = traits::params(f);
    for (std::size_t b = 0; b < nb; ++b) p[b] = theta(static_cast<Eigen::Index>(i * nb + b));
    tuple.factors.push_back(std::move(f));
  }
  return tuple;
}

template <class Spec>
EigenVector params_from_tuple(const StructuredTuple<Spec>& tuple) {
  using traits = structure_traits<Spec>;
  const std::size_t nb = 2 * tuple.n - 1;
  EigenVector theta(static_cast<Eigen::Index>(tuple.r() * nb));
  for (std::size_t i = 0; i < tuple.r(); ++i)
    for (std::size_t b = 0; b < nb; ++b)
      theta(static_cast<Eigen::Index>(i * nb + b)) = traits::params(tuple.factors[i])[b];
  return theta;
}

inline EigenVector residual_vector(const DenseMatrix& product, const DenseMatrix& target) {
  const std::size_t n = target.size();
  EigenVector f(static_cast<Eigen::Index>(n * n));
  for (std::size_t k = 0; k < n * n; ++k)
    f(static_cast<Eigen::Index>(k)) = product.entries()[k] - target.entries()[k];
  return f;
}

template <class Spec>
StructuredTuple<Spec> initial_tuple(std::size_t n, std::size_t r, std::uint64_t seed,
                                    std::size_t restart, double target_norm);

template <>
inline ToeplitzTuple initial_tuple<ToeplitzSpec>(std::size_t n, std::size_t r, std::uint64_t seed,
                                                 std::size_t restart, double target_norm) {
  Rng rng(derive_seed(seed, restart));
  if (restart == 0 && r == minimal_factor_count(n)) {
    // Warm start near the certificate point, where the Jacobian has full rank.
    Vector t = rng.complex_vector(r);
    for (auto& z : t) z *= 0.1;
    return certificate_point(n, t);
  }
  ToeplitzTuple tuple{n, {}};
  for (std::size_t i = 0; i < r; ++i) tuple.factors.push_back(rng.toeplitz(n));
  const double norm = compose_rho(tuple).frobenius_norm();
  if (norm > 0.0) {
    const double c = std::pow(target_norm / norm, 1.0 / static_cast<double>(r));
    for (auto& f : tuple.factors)
      for (auto& z : f.diag) z *= c;
  }
  return tuple;
}

template <>
inline HankelTuple initial_tuple<HankelSpec>(std::size_t n, std::size_t r, std::uint64_t seed,
                                             std::size_t restart, double target_norm) {
  Rng rng(derive_seed(seed, restart));
  HankelTuple tuple{n, {}};
  for (std::size_t i = 0; i < r; ++i) tuple.factors.push_back(rng.hankel(n));
  const double norm = compose_rho(tuple).frobenius_norm();
  if (norm > 0.0) {
    const double c = std::pow(target_norm / norm, 1.0 / static_cast<double>(r));
    for (auto& f : tuple.factors)
      for (auto& z : f.antidiag) z *= c;
  }
  return tuple;
}

struct RunOutcome {
  EigenVector theta;
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// One damped Gauss-Newton run. Steps use the minimum-norm form
/// delta = -J^H (J J^H + mu I)^{-1} F, which is n^2 x n^2 regardless of r.
template <class Spec>
RunOutcome levenberg_run(const DenseMatrix& target, std::size_t r, EigenVector theta,
                         const GaussNewtonConfig& cfg) {
  const std::size_t n = target.size();
  const double target_norm = target.frobenius_norm();
  const double denom = target_norm > 0.0 ? target_norm : 1.0;

  auto evaluate = [&](const EigenVector& th) {
    return residual_vector(compose_rho(tuple_from_params<Spec>(n, r, th)), target);
  };

  EigenVector f = evaluate(theta);
  double fnorm = f.norm();
  double lambda = cfg.damping_initial;
  RunOutcome out{theta, fnorm / denom, 0};

  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    out.iterations = it + 1;
    if (fnorm / denom <= cfg.residual_tolerance) break;

    const auto jac = jacobian_rho(tuple_from_params<Spec>(n, r, theta));
    const EigenMatrix jjh = jac.m * jac.m.adjoint();
    const double scale = jjh.diagonal().real().mean();

    bool accepted = false;
    bool stalled = false;
    while (!accepted && lambda < 1e16) {
      EigenMatrix sys = jjh;
      sys.diagonal().array() += lambda * (scale > 0 ? scale : 1.0);
      Eigen::LLT<EigenMatrix> llt(sys);
      if (llt.info() != Eigen::Success) {
        lambda *= cfg.damping_grow;
        continue;
      }
      const EigenVector delta = -(jac.m.adjoint() * llt.solve(f));
      const EigenVector trial = theta + delta;
      const EigenVector ftrial = evaluate(trial);
      const double tnorm = ftrial.norm();
      if (std::isfinite(tnorm) && tnorm < fnorm) {
        stalled = delta.norm() <= cfg.step_tolerance * (theta.norm() + cfg.step_tolerance);
        theta = trial;
        f = ftrial;
        fnorm = tnorm;
        lambda = std::max(lambda * cfg.damping_shrink, 1e-15);
        accepted = true;
      } else {
        lambda *= cfg.damping_grow;
      }
    }
    if (!accepted || stalled) break;
  }
  out.theta = theta;
  out.residual = fnorm / denom;
  return out;
}

template <class Spec>
DecompositionResult<Spec> structured_decompose(const DenseMatrix& a, std::size_t r,
                                               const GaussNewtonConfig& cfg) {
  cfg.validate();
  const std::size_t n = a.size();
  if (n == 0) throw dimension_error("decompose: empty matrix");
  if (r == 0) throw invalid_value_error("decompose: r must be positive");
  if (!a.all_finite()) throw invalid_value_error("decompose: non-finite entry");

  const double a_norm = a.frobenius_norm();
  DecompositionResult<Spec> result;
  result.underparameterized = r < minimal_factor_count(n);
  if (a_norm == 0.0) {
    result.tuple = tuple_from_params<Spec>(
        n, r, EigenVector::Zero(static_cast<Eigen::Index>(r * (2 * n - 1))));
    result.restarts = 1;
    return result;
  }

  // Solve for A / s with s = ||A||_F / sqrt(n), then fold s into the first factor.
  const double s = a_norm / std::sqrt(static_cast<double>(n));
  DenseMatrix target = a;
  target *= 1.0 / s;

  double best = std::numeric_limits<double>::infinity();
  std::size_t total_iterations = 0;
  for (std::size_t restart = 0; restart < cfg.max_restarts; ++restart) {
    auto start = initial_tuple<Spec>(n, r, cfg.seed, restart, target.frobenius_norm());
    auto run = levenberg_run<Spec>(target, r, params_from_tuple(start), cfg);
    total_iterations += run.iterations;

    auto tuple = tuple_from_params<Spec>(n, r, run.theta);
    for (auto& z : structure_traits<Spec>::params(tuple.factors.front())) z *= s;
    const double residual = relative_residual(compose_rho(tuple), a);
    best = std::min(best, residual);
    if (residual <= cfg.residual_tolerance) {
      result.tuple = std::move(tuple);
      result.residual = residual;
      result.iterations = total_iterations;
      result.restarts = restart + 1;
      return result;
    }
  }
  throw no_convergence("no " + std::string(structure_traits<Spec>::name) +
                           " decomposition with r = " + std::to_string(r) + " found after " +
                           std::to_string(cfg.max_restarts) +
                           " restarts; best relative residual " + std::to_string(best),
                       best);
}

}  // namespace detail

/// Minimal Toeplitz decomposition. Solutions are never unique (any rescaling with
/// unit product works), so only the product is meaningful.
inline DecompositionResult<ToeplitzSpec> gauss_newton_decompose(const DenseMatrix& a, std::size_t r,
                                                                const GaussNewtonConfig& cfg = {}) {
  return detail::structured_decompose<ToeplitzSpec>(a, r, cfg);
}

/// Minimal Hankel decomposition, solved directly in anti-diagonal coordinates.
inline DecompositionResult<HankelSpec> gauss_newton_hankel_decompose(
    const DenseMatrix& a, std::size_t r, const GaussNewtonConfig& cfg = {}) {
  return detail::structured_decompose<HankelSpec>(a, r, cfg);
}

/// Parameters (s, t, u) of the second factor [[s, t], [u, s]] in the 2 x 2 family.
struct ClosedForm2Params {
  Scalar s, t, u;
};

struct ClosedForm2Result {
  ToeplitzTuple tuple;
  /// Empty on the diagonal branch (b = c = 0).
  std::optional<ClosedForm2Params> params;
  std::size_t draws = 0;
};

/// Any 2 x 2 matrix as a product of two Toeplitz matrices, in closed form.
///
/// Diagonal A: [[0, a], [d, 0]] * [[0, 1], [1, 0]]. Otherwise fix s = 1, draw u from the
/// seed, solve the cubic constraint (quadratic in t) for t and take
///   x = (a s - b u) / (s^2 - t u),  y = (b s - a t) / (s^2 - t u),
///   z = (c s^2 - c t u - a s u + b u^2) / ((s^2 - t u) s).
inline ClosedForm2Result closed_form_2x2(const DenseMatrix& m, std::uint64_t seed) {
  if (m.size() != 2) throw dimension_error("closed_form_2x2: matrix must be 2 x 2");
  if (!m.all_finite()) throw invalid_value_error("closed_form_2x2: non-finite entry");
  const Scalar a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);

  auto toeplitz2 = [](Scalar diag, Scalar upper, Scalar lower) {
    return ToeplitzSpec(2, Vector{lower, diag, upper});
  };

  if (b == Scalar{} && c == Scalar{})
    return {ToeplitzTuple{2, {toeplitz2(0.0, a, d), toeplitz2(0.0, 1.0, 1.0)}}, std::nullopt, 0};

  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  constexpr double eps = 1e-8;
  Rng rng(seed);
  for (std::size_t draw = 1; draw <= 8; ++draw) {
    const Scalar s = 1.0;
    Scalar u = rng.complex_normal();
    // t = 1/u always solves the constraint but makes the second factor singular. With
    // c = 0 it is the only root for generic u; the constraint factors as
    // (t u - 1)(b u + d - a), so fix u = (a - d) / b and draw t instead.
    if (std::abs(c) <= eps * scale) {
      u = (a - d) / b;
      const Scalar t = rng.complex_normal();
      const Scalar det = s * s - t * u;
      if (std::abs(det) < eps) continue;
      const Scalar x = (a * s - b * u) / det;
      const Scalar y = (b * s - a * t) / det;
      const Scalar z = (c * s * s - c * t * u - a * s * u + b * u * u) / (det * s);
      return {ToeplitzTuple{2, {toeplitz2(x, y, z), toeplitz2(s, t, u)}}, ClosedForm2Params{s, t, u}, draw};
    }
    // (a-d)s^3 + c s^2 t - b s^2 u - c t^2 u + b t u^2 + (d-a) s t u = 0 with s = 1:
    //   (-c u) t^2 + (c + b u^2 + (d - a) u) t + (a - d - b u) = 0
    const Scalar qa = -c * u;
    const Scalar qb = c + b * u * u + (d - a) * u;
    const Scalar qc = a - d - b * u;

    std::vector<Scalar> roots;
    if (std::abs(qa) > eps * scale) {
      const Scalar disc = std::sqrt(qb * qb - 4.0 * qa * qc);
      // Pick the stable pairing of the quadratic formula.
      const Scalar q = -0.5 * (qb + (std::real(std::conj(qb) * disc) >= 0 ? disc : -disc));
      if (q != Scalar{}) roots = {q / qa, qc / q};
      else roots = {Scalar{}};
    } else if (std::abs(qb) > eps * scale) {
      roots = {-qc / qb};
    } else {
      continue;
    }

    for (const Scalar t : roots) {
      const Scalar det = s * s - t * u;
      if (!is_finite(t) || std::abs(det * s) < eps) continue;
      const Scalar x = (a * s - b * u) / det;
      const Scalar y = (b * s - a * t) / det;
      const Scalar z = (c * s * s - c * t * u - a * s * u + b * u * u) / (det * s);
      ToeplitzTuple tuple{2, {toeplitz2(x, y, z), toeplitz2(s, t, u)}};
      return {std::move(tuple), ClosedForm2Params{s, t, u}, draw};
    }
  }
  throw no_convergence("closed_form_2x2: no admissible parameters after 8 draws",
                       std::numeric_limits<double>::infinity());
}

}  // namespace toepfact
