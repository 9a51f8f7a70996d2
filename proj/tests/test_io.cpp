#include "catch_amalgamated.hpp"

#include "support.hpp"

using namespace tfs;

namespace {

std::size_t parse_error_line(auto&& fn) {
  try {
    fn();
  } catch (const parse_error& e) {
    return e.line();
  }
  FAIL("expected parse_error");
  return 0;
}

}  // namespace

TEST_CASE("complex literals", "[io]") {
  CHECK(parse_complex("1.5") == Scalar(1.5, 0.0));
  CHECK(parse_complex("2-0.25i") == Scalar(2.0, -0.25));
  CHECK(parse_complex("-3e-2+1E+3i") == Scalar(-0.03, 1000.0));
  CHECK(parse_complex("3i") == Scalar(0.0, 3.0));
  CHECK(parse_complex("-i") == Scalar(0.0, -1.0));
  CHECK(parse_complex("i") == Scalar(0.0, 1.0));
  CHECK(parse_complex("+2") == Scalar(2.0, 0.0));
  for (const char* bad : {"", "abc", "1+", "1.5x", "2+3j", "--1", "1e"}) CHECK_THROWS_AS(parse_complex(bad), parse_error);

  CHECK(format_complex(Scalar(1.5, 0.0)) == "1.5");
  CHECK(format_complex(Scalar(2.0, -0.25)) == "2-0.25i");
  CHECK(format_complex(Scalar(0.0, 3.0)) == "0+3i");
  CHECK(format_complex(Scalar(0.1, 0.0)) == "0.10000000000000001");

  Rng rng(80);
  for (int trial = 0; trial < 200; ++trial) {
    const Scalar z(rng.complex_normal() * std::pow(10.0, rng.uniform(-300, 300)));
    CHECK(parse_complex(format_complex(z)) == z);
  }
}

TEST_CASE("matrix files", "[io]") {
  Rng rng(81);
  for (std::size_t n : {1, 2, 5, 9}) {
    const auto a = rng.matrix(n);
    const auto text = serialize_matrix(a);
    CHECK(parse_matrix(text) == a);
    CHECK(serialize_matrix(parse_matrix(text)) == text);
  }
  CHECK(serialize_matrix(DenseMatrix{{1, 2}, {3, Scalar(4, -1)}}) == "toepfact-matrix v1 2 2\n1 2\n3 4-1i\n");
  CHECK(parse_matrix("# comment\n\ntoepfact-matrix v1 2 2\n1   2\n\n3\t4-1i\n") ==
        DenseMatrix{{1, 2}, {3, Scalar(4, -1)}});
}

TEST_CASE("matrix parse errors carry line numbers", "[io]") {
  CHECK(parse_error_line([] { parse_matrix(""); }) == 0);
  CHECK(parse_error_line([] { parse_matrix("toepfact-matrix v2 2 2\n1 2\n3 4\n"); }) == 1);
  CHECK(parse_error_line([] { parse_matrix("toepfact-matrix v1 2 3\n"); }) == 1);
  CHECK(parse_error_line([] { parse_matrix("toepfact-matrix v1 2 2\n1 2\n3 x\n"); }) == 3);
  CHECK(parse_error_line([] { parse_matrix("toepfact-matrix v1 2 2\n1 2 3\n3 4\n"); }) == 2);
  CHECK(parse_error_line([] { parse_matrix("toepfact-matrix v1 2 2\n1 2\n"); }) == 2);
  CHECK(parse_error_line([] { parse_matrix("toepfact-matrix v1 2 2\n1 2\n3 4\n5 6\n"); }) == 4);
  CHECK(parse_error_line([] { parse_matrix("toepfact-matrix v1 1 1\nnan\n"); }) == 2);
  CHECK(parse_error_line([] { parse_matrix("toepfact-matrix v1 1 1\ninf\n"); }) == 2);
}

TEST_CASE("chain files", "[io]") {
  const auto a = ge_example_matrix();
  ChainDocument doc{toeplitz_permutation_decompose(a), "ge", "toeplitz", 17, 1.25e-15, false};
  const auto text = serialize_chain(doc);
  const auto back = parse_chain(text);
  CHECK(back == doc);
  CHECK(serialize_chain(back) == text);
  CHECK(relative_residual(dense_product(back.chain), a) <= 1e-10);

  Rng rng(82);
  ChainDocument h{hankel_permutation_decompose(rng.matrix(4)), "ge", "hankel", 3, 0.0, true};
  CHECK(parse_chain(serialize_chain(h)) == h);
  CHECK(serialize_chain(h).find("leading 4 3 2 1\n") != std::string::npos);

  const std::string small =
      "toepfact-chain v1 2\nmethod ge\nkind toeplitz\nseed 0\nresidual 0 relative\nleading none\n"
      "toeplitz 1 2 3\npermutation 2 1\nend\n";
  const auto s = parse_chain(small);
  REQUIRE(s.chain.factors.size() == 2);
  CHECK(densify(std::get<ToeplitzSpec>(s.chain.factors[0])) == DenseMatrix{{2, 3}, {1, 2}});
  CHECK(dense_product(s.chain) == DenseMatrix{{3, 2}, {2, 1}});
}

TEST_CASE("chain parse errors carry line numbers", "[io]") {
  const std::string head = "toepfact-chain v1 2\nmethod ge\nkind toeplitz\nseed 0\nresidual 0 relative\nleading none\n";
  CHECK(parse_error_line([&] { parse_chain(head + "toeplitz 1 2\nend\n"); }) == 7);
  CHECK(parse_error_line([&] { parse_chain(head + "permutation 1 1\nend\n"); }) == 7);
  CHECK(parse_error_line([&] { parse_chain(head + "permutation 1 3\nend\n"); }) == 7);
  CHECK(parse_error_line([&] { parse_chain(head + "circulant 1 2 3\nend\n"); }) == 7);
  CHECK(parse_error_line([&] { parse_chain(head + "toeplitz 1 2 3\n"); }) == 7);
  CHECK(parse_error_line([&] { parse_chain(head + "end\nextra\n"); }) == 8);
  CHECK(parse_error_line([] { parse_chain("toepfact-chain v1 2\nmethod ge\nseed 0\n"); }) == 3);
  CHECK(parse_error_line([] { parse_chain("toepfact-chain v1 2\nmethod ge\nkind toeplitz\nseed -1\n"); }) == 4);
  CHECK(parse_error_line([] {
          parse_chain("toepfact-chain v1 2\nmethod ge\nkind toeplitz\nseed 0\nresidual 0 maybe\n");
        }) == 5);
}
