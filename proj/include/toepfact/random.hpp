#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "structured.hpp"

namespace toepfact {

/// Mixes a base seed with a stream index (splitmix64 finaliser), so restart k
/// of a run seeded with s always sees the same stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Standard complex normal: E|z|^2 = 1.
  Scalar complex_normal() {
    constexpr double s = 0.70710678118654752440;
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {s * re, s * im};
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  std::uint64_t next() { return engine_(); }

  Vector complex_vector(std::size_t n) {
    Vector v(n);
    for (auto& z : v) z = complex_normal();
    return v;
  }

  DenseMatrix matrix(std::size_t n) { return DenseMatrix(n, complex_vector(n * n)); }

  ToeplitzSpec toeplitz(std::size_t n) { return ToeplitzSpec(n, complex_vector(2 * n - 1)); }

  HankelSpec hankel(std::size_t n) { return HankelSpec(n, complex_vector(2 * n - 1)); }

  ToeplitzSpec upper_toeplitz(std::size_t n) {
    ToeplitzSpec t(n);
    for (long k = 0; k < static_cast<long>(n); ++k) t.at(k) = complex_normal();
    return t;
  }

  ToeplitzSpec symmetric_toeplitz(std::size_t n) {
    ToeplitzSpec t(n);
    for (long k = 0; k < static_cast<long>(n); ++k) t.at(k) = t.at(-k) = complex_normal();
    return t;
  }

  /// Circulant C(i, j) = c[(i - j) mod n], as a Toeplitz spec.
  ToeplitzSpec circulant(std::size_t n) {
    const Vector c = complex_vector(n);
    ToeplitzSpec t(n);
    for (long k = -static_cast<long>(n) + 1; k < static_cast<long>(n); ++k) {
      const long m = ((-k) % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n);
      t.at(k) = c[static_cast<std::size_t>(m)];
    }
    return t;
  }

  /// Persymmetric Hankel: anti-diagonal values symmetric about the centre.
  HankelSpec persymmetric_hankel(std::size_t n) {
    HankelSpec h(n);
    const std::size_t len = 2 * n - 1;
    for (std::size_t s = 0; s < n; ++s) h.antidiag[s] = h.antidiag[len - 1 - s] = complex_normal();
    return h;
  }

  /// Centrosymmetric: a(i, j) = a(n-1-i, n-1-j).
  DenseMatrix centrosymmetric(std::size_t n) {
    DenseMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t ii = n - 1 - i, jj = n - 1 - j;
        if (i * n + j <= ii * n + jj) a(i, j) = a(ii, jj) = complex_normal();
      }
    return a;
  }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace toepfact
