#include "catch_amalgamated.hpp"

#include "support.hpp"

using namespace tfs;

namespace {

template <class Spec>
EigenMatrix finite_difference_jacobian(const StructuredTuple<Spec>& tuple, double h = 1e-6) {
  using traits = structure_traits<Spec>;
  const std::size_t n = tuple.n, nb = 2 * n - 1;
  EigenMatrix fd(static_cast<Eigen::Index>(n * n), static_cast<Eigen::Index>(tuple.r() * nb));
  for (std::size_t i = 0; i < tuple.r(); ++i) {
    for (std::size_t b = 0; b < nb; ++b) {
      // Holomorphic map: the real-direction difference is the complex derivative;
      // the imaginary direction must agree with it times i.
      auto plus = tuple, minus = tuple, iplus = tuple, iminus = tuple;
      traits::params(plus.factors[i])[b] += h;
      traits::params(minus.factors[i])[b] -= h;
      traits::params(iplus.factors[i])[b] += Scalar(0.0, h);
      traits::params(iminus.factors[i])[b] -= Scalar(0.0, h);
      const auto dr = compose_rho(plus) - compose_rho(minus);
      const auto di = compose_rho(iplus) - compose_rho(iminus);
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
          const Scalar real_dir = dr(p, q) / (2 * h);
          const Scalar imag_dir = di(p, q) / (2 * h) / Scalar(0.0, 1.0);
          fd(static_cast<Eigen::Index>(p * n + q), static_cast<Eigen::Index>(i * nb + b)) =
              0.5 * (real_dir + imag_dir);
        }
    }
  }
  return fd;
}

ToeplitzTuple random_tuple(Rng& rng, std::size_t n, std::size_t r) {
  ToeplitzTuple t{n, {}};
  for (std::size_t i = 0; i < r; ++i) t.factors.push_back(rng.toeplitz(n));
  return t;
}

EigenVector vec_of(const DenseMatrix& m) {
  EigenVector v(static_cast<Eigen::Index>(m.size() * m.size()));
  for (std::size_t p = 0; p < m.size(); ++p)
    for (std::size_t q = 0; q < m.size(); ++q) v(static_cast<Eigen::Index>(p * m.size() + q)) = m(p, q);
  return v;
}

}  // namespace

TEST_CASE("product map", "[rho]") {
  ToeplitzTuple ids{4, {shift_basis(0, 4), shift_basis(0, 4), shift_basis(0, 4)}};
  CHECK(compose_rho(ids) == DenseMatrix::identity(4));

  ToeplitzTuple printed{3, {toeplitz_from_dense(printed_pair_left()), toeplitz_from_dense(printed_pair_right())}};
  CHECK(max_entry_error(compose_rho(printed), one_to_nine()) <= 1e-3);

  Rng rng(40);
  const auto t = random_tuple(rng, 5, 3);
  FactorChain c{5, {t.factors[0], t.factors[1], t.factors[2]}, std::nullopt};
  CHECK(relative_residual(compose_rho(t), dense_product(c)) <= 1e-15);

  ToeplitzTuple mixed{3, {shift_basis(0, 3), shift_basis(0, 4)}};
  CHECK_THROWS_AS(compose_rho(mixed), dimension_error);
}

TEST_CASE("Jacobian structure", "[jacobian]") {
  const std::size_t n = 3, nb = 5;
  ToeplitzTuple one{n, {Rng(1).toeplitz(n)}};
  const auto j1 = jacobian_rho(one);
  for (std::size_t b = 0; b < nb; ++b)
    CHECK((j1.m.col(static_cast<Eigen::Index>(b)) - vec_of(densify(shift_basis(static_cast<long>(b) - 2, n)))).norm() == 0.0);

  ToeplitzTuple ii{n, {shift_basis(0, n), shift_basis(0, n)}};
  const auto j2 = jacobian_rho(ii);
  REQUIRE(j2.m.rows() == 9);
  REQUIRE(j2.m.cols() == 10);
  for (std::size_t b = 0; b < nb; ++b) {
    const auto basis = vec_of(densify(shift_basis(static_cast<long>(b) - 2, n)));
    CHECK((j2.m.col(j2.column_index(0, b)) - basis).norm() == 0.0);
    CHECK((j2.m.col(j2.column_index(1, b)) - basis).norm() == 0.0);
  }
}

TEST_CASE("Jacobian against finite differences", "[jacobian]") {
  Rng rng(41);
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::size_t r = 1; r <= 3; ++r) {
      const auto t = random_tuple(rng, n, r);
      const auto analytic = jacobian_rho(t).m;
      const auto fd = finite_difference_jacobian(t);
      CHECK((analytic - fd).norm() / analytic.norm() <= 1e-6);
    }
  }
  HankelTuple h{4, {rng.hankel(4), rng.hankel(4), rng.hankel(4)}};
  const auto analytic = jacobian_rho(h).m;
  CHECK((analytic - finite_difference_jacobian(h)).norm() / analytic.norm() <= 1e-6);
}

TEST_CASE("certificate point", "[certificate]") {
  const Vector zeros(3);
  for (const auto& f : certificate_point(5, zeros).factors) CHECK(densify(f) == DenseMatrix::identity(5));

  const Scalar t2(0.3, 0.1), t1(-0.7, 0.2);
  // t lists t_{n-1}, t_{n-2}, ...; factors come in product order T_1 T_2.
  const auto tuple = certificate_point(3, Vector{t2, t1});
  REQUIRE(tuple.r() == 2);
  DenseMatrix f1 = DenseMatrix::identity(3), f2 = DenseMatrix::identity(3);
  f1(0, 1) += t1;
  f1(1, 2) += t1;
  f1(1, 0) -= t1;
  f1(2, 1) -= t1;
  f2(0, 2) += t2;
  f2(2, 0) -= t2;
  CHECK(densify(tuple.factors[0]) == f1);
  CHECK(densify(tuple.factors[1]) == f2);

  Rng rng(42);
  const auto t5 = certificate_point(5, rng.complex_vector(3));
  REQUIRE(t5.r() == 3);
  for (const auto& f : t5.factors) {
    std::size_t nonzero = 0;
    for (const auto& z : f.diag) nonzero += z != Scalar{};
    CHECK(nonzero == 3);
  }
  CHECK_THROWS_AS(certificate_point(5, rng.complex_vector(5)), dimension_error);
}

TEST_CASE("rank certificate", "[certificate]") {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto cert = rank_certificate(n, 5);
    CHECK(cert.rank == n * n);
    CHECK(cert.required_rank == n * n);
    CHECK(cert.r == n / 2 + 1);
    CHECK(cert.sharp);
    CHECK(cert.pass);
  }
  CHECK_THROWS_AS(rank_certificate(1, 0), dimension_error);

  // One factor fewer never reaches n^2 dimensions.
  for (std::size_t n = 2; n <= 1000; ++n) CHECK((n / 2) * (2 * n - 1) < n * n);
}

TEST_CASE("Gauss-Newton recovers a single Toeplitz factor", "[solver]") {
  Rng rng(43);
  const auto t = rng.toeplitz(4);
  const auto res = gauss_newton_decompose(densify(t), 1);
  CHECK(res.residual <= 1e-8);
  CHECK(res.underparameterized);
  for (std::size_t k = 0; k < t.diag.size(); ++k) CHECK(std::abs(res.tuple.factors[0].diag[k] - t.diag[k]) <= 1e-7);
}

TEST_CASE("Gauss-Newton on the 3 x 3 example", "[solver]") {
  GaussNewtonConfig cfg;
  cfg.seed = 1;
  const auto res = gauss_newton_decompose(one_to_nine(), 2, cfg);
  CHECK(res.residual <= 1e-8);
  CHECK(res.restarts <= 20);
  // Reported residual is the independently recomputed one.
  CHECK(std::abs(relative_residual(compose_rho(res.tuple), one_to_nine()) - res.residual) <= 1e-15);
}

TEST_CASE("Gauss-Newton on random matrices", "[solver]") {
  Rng rng(44);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto a = rng.matrix(n);
    GaussNewtonConfig cfg;
    cfg.seed = n;
    const auto res = gauss_newton_decompose(a, minimal_factor_count(n), cfg);
    CHECK(res.residual <= 1e-8);
    CHECK(res.tuple.r() == minimal_factor_count(n));
    CHECK_FALSE(res.underparameterized);
  }
}

TEST_CASE("Hankel Gauss-Newton", "[solver][hankel]") {
  Rng rng(45);
  const auto h = rng.hankel(4);
  CHECK(gauss_newton_hankel_decompose(densify(h), 1).residual <= 1e-8);
  CHECK(gauss_newton_hankel_decompose(tfs::exchange(5), 1).residual <= 1e-12);

  const auto a = rng.matrix(4);
  const auto res = gauss_newton_hankel_decompose(a, 3);
  CHECK(res.residual <= 1e-8);
  for (const auto& f : res.tuple.factors) CHECK(is_hankel(densify(f)));
}

TEST_CASE("too few factors fails with the best residual", "[solver]") {
  Rng rng(46);
  GaussNewtonConfig cfg;
  cfg.max_restarts = 3;
  cfg.max_iterations = 100;
  try {
    gauss_newton_decompose(rng.matrix(3), 1, cfg);
    FAIL("expected no_convergence");
  } catch (const no_convergence& e) {
    CHECK(e.best_residual() > 1e-8);
  }
}

TEST_CASE("solver configuration", "[solver]") {
  GaussNewtonConfig cfg;
  cfg.residual_tolerance = 1e-17;
  CHECK_THROWS_AS(gauss_newton_decompose(one_to_nine(), 2, cfg), invalid_value_error);
  cfg = {};
  cfg.damping_grow = 0.5;
  CHECK_THROWS_AS(gauss_newton_decompose(one_to_nine(), 2, cfg), invalid_value_error);
  CHECK_THROWS_AS(gauss_newton_decompose(one_to_nine(), 0), invalid_value_error);

  const auto zero = gauss_newton_decompose(DenseMatrix(3), 2);
  CHECK(compose_rho(zero.tuple) == DenseMatrix(3));

  GaussNewtonConfig seeded;
  seeded.seed = 9;
  const auto a = gauss_newton_decompose(one_to_nine(), 2, seeded);
  const auto b = gauss_newton_decompose(one_to_nine(), 2, seeded);
  CHECK(a.tuple.factors[0] == b.tuple.factors[0]);
  CHECK(a.tuple.factors[1] == b.tuple.factors[1]);
}

TEST_CASE("scaling gauge", "[rho]") {
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    auto t = random_tuple(rng, 4, 3);
    const auto before = compose_rho(t);
    const Scalar a1 = rng.complex_normal(), a2 = rng.complex_normal();
    const Scalar a3 = 1.0 / (a1 * a2);
    for (auto& z : t.factors[0].diag) z *= a1;
    for (auto& z : t.factors[1].diag) z *= a2;
    for (auto& z : t.factors[2].diag) z *= a3;
    CHECK(relative_residual(compose_rho(t), before) <= 1e-12);
  }
}

TEST_CASE("2 x 2 closed form", "[closed-form]") {
  const Scalar a(2.0, 1.0), d(-3.0, 0.5);
  const auto diag = closed_form_2x2(DenseMatrix{{a, 0}, {0, d}}, 0);
  CHECK_FALSE(diag.params);
  CHECK(densify(diag.tuple.factors[0]) == DenseMatrix{{0, a}, {d, 0}});
  CHECK(densify(diag.tuple.factors[1]) == DenseMatrix{{0, 1}, {1, 0}});
  CHECK(compose_rho(diag.tuple) == DenseMatrix{{a, 0}, {0, d}});

  CHECK(compose_rho(closed_form_2x2(DenseMatrix::identity(2), 3).tuple) == DenseMatrix::identity(2));

  Rng rng(48);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = rng.matrix(2);
    const auto res = closed_form_2x2(m, static_cast<std::uint64_t>(trial));
    CHECK(relative_residual(compose_rho(res.tuple), m) <= 1e-12);
    REQUIRE(res.params);
    const auto& p = *res.params;
    CHECK(p.s == 1.0);
    CHECK(std::abs((p.s * p.s - p.t * p.u) * p.s) > 0.0);
    // The second factor is [[s, t], [u, s]].
    CHECK(densify(res.tuple.factors[1]) == DenseMatrix{{p.s, p.t}, {p.u, p.s}});
  }
  // Only one off-diagonal entry nonzero.
  CHECK(relative_residual(compose_rho(closed_form_2x2(DenseMatrix{{1, 2}, {0, 3}}, 1).tuple), DenseMatrix{{1, 2}, {0, 3}}) <=
        1e-12);
  CHECK(relative_residual(compose_rho(closed_form_2x2(DenseMatrix{{1, 0}, {5, 3}}, 1).tuple), DenseMatrix{{1, 0}, {5, 3}}) <=
        1e-12);
  CHECK_THROWS_AS(closed_form_2x2(DenseMatrix::identity(3), 0), dimension_error);
}
