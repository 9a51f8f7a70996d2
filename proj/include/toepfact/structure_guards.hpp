#pragma once

// Necessary conditions for products of restricted Toeplitz/Hankel classes.
//
// Centrosymmetric matrices (a_ij = a_{n+1-i, n+1-j}) are closed under products and
// contain every symmetric Toeplitz matrix and the exchange matrix J, so products of
// symmetric Toeplitz or of persymmetric Hankel (= J * symmetric Toeplitz) factors stay
// in that set. Every circulant has the all-ones vector as an eigenvector, and so does
// any product of circulants.

#include <cmath>

#include "structured.hpp"

namespace toepfact {

struct StructureCheck {
  bool holds = false;
  /// Max entry deviation relative to max|a_ij|.
  double deviation = 0.0;
};

inline StructureCheck is_centrosymmetric(const DenseMatrix& a, double tol = default_tolerance) {
  double dev = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      dev = std::max(dev, std::abs(a(i, j) - a(n - 1 - i, n - 1 - j)));
  dev = detail::relative_to_max(dev, a);
  return {dev <= tol, dev};
}

struct CirculantObstruction {
  /// min over lambda of ||A 1 - lambda 1|| / ||A 1||, or ||A 1|| itself when A 1 = 0.
  double residual = 0.0;
  bool zero_image = false;
};

inline CirculantObstruction circulant_obstruction(const DenseMatrix& a) {
  const std::size_t n = a.size();
  Vector image(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& z : a.row(i)) image[i] += z;
  const double image_norm = norm2(image);
  if (image_norm == 0.0) return {0.0, true};

  Scalar lambda{};
  for (const auto& z : image) lambda += z;
  lambda /= static_cast<double>(n);
  double r = 0.0;
  for (const auto& z : image) r += std::norm(z - lambda);
  return {std::sqrt(r) / image_norm, false};
}

struct StructureReport {
  StructureCheck centrosymmetric;
  double allones_eigvec_residual = 0.0;
  bool allones_zero_image = false;
  StructureCheck symmetric_toeplitz;
  StructureCheck persymmetric_hankel;
  StructureCheck circulant;

  // Classes whose products can never equal A. The screen only reports necessary
  // conditions: a class that is not ruled out may still fail to decompose A.
  bool symmetric_toeplitz_ruled_out = false;
  bool persymmetric_hankel_ruled_out = false;
  bool circulant_ruled_out = false;
};

inline StructureReport decomposability_screen(const DenseMatrix& a, double tol = default_tolerance) {
  StructureReport rep;
  rep.centrosymmetric = is_centrosymmetric(a, tol);

  const auto obstruction = circulant_obstruction(a);
  rep.allones_eigvec_residual = obstruction.residual;
  rep.allones_zero_image = obstruction.zero_image;

  const double sym_toep = std::max(toeplitz_deviation(a), symmetric_deviation(a));
  rep.symmetric_toeplitz = {sym_toep <= tol, sym_toep};
  const double per_hank = std::max(hankel_deviation(a), persymmetric_deviation(a));
  rep.persymmetric_hankel = {per_hank <= tol, per_hank};
  const double circ = circulant_deviation(a);
  rep.circulant = {circ <= tol, circ};

  rep.symmetric_toeplitz_ruled_out = !rep.centrosymmetric.holds;
  // A persymmetric Hankel matrix is J T with T symmetric Toeplitz, so products of them
  // lie in J S = S.
  rep.persymmetric_hankel_ruled_out = !rep.centrosymmetric.holds;
  rep.circulant_ruled_out = rep.allones_eigvec_residual > tol;
  return rep;
}

}  // namespace toepfact
