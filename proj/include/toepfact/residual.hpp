#pragma once

#include <cstdint>

#include "chain.hpp"
#include "random.hpp"

namespace toepfact {

/// Chains up to this size are checked by their dense product; larger ones by probing.
inline constexpr std::size_t dense_check_limit = 128;

struct ChainResidual {
  double value = 0.0;
  /// A = 0, so `value` is ||product||_F rather than a relative error.
  bool absolute = false;
  /// Estimated from random probe vectors instead of the dense product.
  bool probed = false;
};

/// ||chain - A||_F / ||A||_F. For n > dense_check_limit the dense product costs
/// O(n^4), so the residual is estimated as ||(C - A) X||_F / ||A X||_F with X an
/// n x `probes` complex Gaussian block drawn from `seed`, using fast matvecs for C.
inline ChainResidual chain_residual(const FactorChain& chain, const DenseMatrix& a,
                                    std::uint64_t seed = 0, std::size_t probes = 4) {
  if (chain.n != a.size())
    throw dimension_error("chain has dimension " + std::to_string(chain.n) + ", matrix has " +
                          std::to_string(a.size()));
  ChainResidual out;
  out.absolute = a.frobenius_norm() == 0.0;
  if (chain.n <= dense_check_limit) {
    out.value = relative_residual(dense_product(chain), a);
    return out;
  }
  out.probed = true;
  Rng rng(derive_seed(seed, 0x9e5));
  double num = 0.0, den = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    const Vector x = rng.complex_vector(chain.n);
    const Vector cx = chain_apply(chain, x);
    const Vector ax = matvec(a, x);
    for (std::size_t i = 0; i < chain.n; ++i) {
      num += std::norm(cx[i] - ax[i]);
      den += std::norm(ax[i]);
    }
  }
  out.value = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return out;
}

}  // namespace toepfact
