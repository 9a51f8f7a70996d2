#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "toeplitz_ops.hpp"

namespace toepfact {

using Factor = std::variant<ToeplitzSpec, HankelSpec, PermutationSpec>;

inline std::size_t factor_size(const Factor& f) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, PermutationSpec>)
          return x.size();
        else
          return x.n;
      },
      f);
}

inline DenseMatrix densify(const Factor& f) {
  return std::visit([](const auto& x) { return densify(x); }, f);
}

/// Ordered product of structured factors, optionally preceded by a permutation.
/// Evaluates to leading * factors[0] * factors[1] * ... .
struct FactorChain {
  std::size_t n = 0;
  std::vector<Factor> factors;
  std::optional<PermutationSpec> leading_permutation;

  std::size_t count_toeplitz() const { return count<ToeplitzSpec>(); }
  std::size_t count_hankel() const { return count<HankelSpec>(); }
  std::size_t count_permutation() const { return count<PermutationSpec>(); }

  void validate() const {
    if (factors.empty() && !leading_permutation) throw dimension_error("FactorChain: empty chain");
    if (leading_permutation && leading_permutation->size() != n)
      throw dimension_error("FactorChain: leading permutation has the wrong dimension");
    for (std::size_t k = 0; k < factors.size(); ++k)
      if (factor_size(factors[k]) != n)
        throw dimension_error("FactorChain: factor " + std::to_string(k + 1) + " has dimension " +
                              std::to_string(factor_size(factors[k])) + ", chain has " +
                              std::to_string(n));
  }

  friend bool operator==(const FactorChain&, const FactorChain&) = default;

private:
  template <typename T>
  std::size_t count() const {
    std::size_t c = 0;
    for (const auto& f : factors) c += std::holds_alternative<T>(f);
    return c;
  }
};

/// Left-to-right dense product of the chain.
inline DenseMatrix dense_product(const FactorChain& chain) {
  chain.validate();
  DenseMatrix acc = chain.leading_permutation ? densify(*chain.leading_permutation)
                                              : DenseMatrix::identity(chain.n);
  for (const auto& f : chain.factors)
    acc = std::visit([&](const auto& x) { return multiply(acc, x); }, f);
  return acc;
}

/// chain * x using fast structured matvecs, O(#factors * n log n). Factors are
/// applied right to left.
inline Vector chain_apply(const FactorChain& chain, std::span<const Scalar> x) {
  chain.validate();
  if (x.size() != chain.n) throw dimension_error("chain_apply: dimension mismatch");
  Vector y(x.begin(), x.end());
  for (auto it = chain.factors.rbegin(); it != chain.factors.rend(); ++it) {
    y = std::visit(
        [&](const auto& f) -> Vector {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, ToeplitzSpec>)
            return toeplitz_matvec(f, y);
          else if constexpr (std::is_same_v<F, HankelSpec>)
            return hankel_matvec(f, y);
          else
            return permute_vector(f, y);
        },
        *it);
  }
  if (chain.leading_permutation) y = permute_vector(*chain.leading_permutation, y);
  return y;
}

}  // namespace toepfact
