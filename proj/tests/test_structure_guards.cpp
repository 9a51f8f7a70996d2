#include "catch_amalgamated.hpp"

#include "support.hpp"

using namespace tfs;

namespace {

template <class Draw>
DenseMatrix random_product(Rng& rng, std::size_t n, Draw draw) {
  const auto count = 1 + rng.next() % 4;
  auto p = DenseMatrix::identity(n);
  for (std::size_t k = 0; k < count; ++k) p = p * draw();
  return p;
}

/// Centrosymmetric with every row sum equal to 1.
DenseMatrix centrosymmetric_constant_rows(Rng& rng, std::size_t n) {
  auto a = rng.centrosymmetric(n);
  for (std::size_t i = 0; i < n; ++i) {
    Scalar s{};
    for (const auto& z : a.row(i)) s += z;
    a(i, i) += 1.0 - s;
  }
  return a;
}

}  // namespace

TEST_CASE("centrosymmetry", "[guards]") {
  Rng rng(70);
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto c = is_centrosymmetric(densify(rng.symmetric_toeplitz(n)));
    CHECK(c.holds);
    CHECK(c.deviation == 0.0);
  }
  const auto c = is_centrosymmetric(DenseMatrix{{1, 2}, {3, 4}});
  CHECK_FALSE(c.holds);
  CHECK(c.deviation == 0.75);
  CHECK(is_centrosymmetric(tfs::exchange(5)).holds);
  CHECK(is_centrosymmetric(DenseMatrix(3)).holds);
}

TEST_CASE("centrosymmetric matrices are closed under products", "[guards][trap]") {
  Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto x = rng.centrosymmetric(n), y = rng.centrosymmetric(n);
    REQUIRE(is_centrosymmetric(x, 0.0).holds);
    const auto c = is_centrosymmetric(x * y, 1e-12);
    CHECK(c.holds);
  }
  // Exact on integer inputs.
  const DenseMatrix x{{1, 2, 3}, {4, 5, 4}, {3, 2, 1}}, y{{2, 0, 1}, {7, 1, 7}, {1, 0, 2}};
  CHECK(is_centrosymmetric(x * y, 0.0).holds);
}

TEST_CASE("circulant obstruction", "[guards][trap]") {
  Rng rng(72);
  for (std::size_t n = 1; n <= 8; ++n) CHECK(circulant_obstruction(densify(rng.circulant(n))).residual <= 1e-12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto p = densify(rng.circulant(n)) * densify(rng.circulant(n)) * densify(rng.circulant(n));
    CHECK(circulant_obstruction(p).residual <= 1e-12);
  }
  // Integer circulant: row sums are exactly equal.
  CHECK(circulant_obstruction(DenseMatrix{{1, 2, 3}, {3, 1, 2}, {2, 3, 1}}).residual == 0.0);

  const auto d = circulant_obstruction(DenseMatrix{{1, 0}, {0, 2}});
  CHECK_FALSE(d.zero_image);
  CHECK_THAT(d.residual, Catch::Matchers::WithinAbs(std::sqrt(0.5) / std::sqrt(5.0), 1e-15));

  const auto z = circulant_obstruction(DenseMatrix{{1, -1}, {2, -2}});
  CHECK(z.zero_image);
  CHECK(z.residual == 0.0);
}

TEST_CASE("rotation exchanges persymmetry and symmetry", "[guards]") {
  Rng rng(73);
  for (std::size_t n = 2; n <= 7; ++n) {
    const auto h = densify(rng.persymmetric_hankel(n));
    CHECK(persymmetric_deviation(h) == 0.0);
    CHECK(symmetric_deviation(apply_operator(h, MatrixOp::rotate)) == 0.0);

    const auto t = densify(rng.symmetric_toeplitz(n));
    const auto tr = apply_operator(t, MatrixOp::rotate);
    CHECK(persymmetric_deviation(tr) == 0.0);

    // Generic matrices are neither.
    const auto g = rng.matrix(n);
    CHECK(persymmetric_deviation(g) > 1e-3);
    CHECK(symmetric_deviation(apply_operator(g, MatrixOp::rotate)) > 1e-3);
  }
}

TEST_CASE("screen examples", "[guards][screen]") {
  const auto r9 = decomposability_screen(one_to_nine());
  CHECK_FALSE(r9.centrosymmetric.holds);
  CHECK(r9.symmetric_toeplitz_ruled_out);
  CHECK(r9.persymmetric_hankel_ruled_out);

  const auto ri = decomposability_screen(DenseMatrix::identity(4));
  CHECK_FALSE(ri.symmetric_toeplitz_ruled_out);
  CHECK_FALSE(ri.persymmetric_hankel_ruled_out);
  CHECK_FALSE(ri.circulant_ruled_out);
  CHECK(ri.symmetric_toeplitz.holds);
  CHECK(ri.circulant.holds);

  Rng rng(74);
  const auto rc = decomposability_screen(centrosymmetric_constant_rows(rng, 5));
  CHECK_FALSE(rc.symmetric_toeplitz_ruled_out);
  CHECK_FALSE(rc.persymmetric_hankel_ruled_out);
  CHECK_FALSE(rc.circulant_ruled_out);

  const auto rd = decomposability_screen(DenseMatrix{{1, 0}, {0, 2}});
  CHECK(rd.circulant_ruled_out);
  CHECK(decomposability_screen(DenseMatrix{{1, 2}, {3, 4}}).symmetric_toeplitz_ruled_out);
}

TEST_CASE("screen never rules out a product of its own class", "[guards][screen]") {
  Rng rng(75);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto st = random_product(rng, n, [&] { return densify(rng.symmetric_toeplitz(n)); });
    CHECK_FALSE(decomposability_screen(st).symmetric_toeplitz_ruled_out);

    const auto ph = random_product(rng, n, [&] { return densify(rng.persymmetric_hankel(n)); });
    CHECK_FALSE(decomposability_screen(ph).persymmetric_hankel_ruled_out);

    const auto ci = random_product(rng, n, [&] { return densify(rng.circulant(n)); });
    CHECK_FALSE(decomposability_screen(ci).circulant_ruled_out);
  }
}

TEST_CASE("generic matrices are ruled out of every restricted class", "[guards][screen]") {
  Rng rng(76);
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto r = decomposability_screen(rng.matrix(n));
    CHECK(r.symmetric_toeplitz_ruled_out);
    CHECK(r.persymmetric_hankel_ruled_out);
    CHECK(r.circulant_ruled_out);
  }
}
