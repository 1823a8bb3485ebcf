#pragma once

#include "shadowlab/linalg.hpp"

namespace shadowlab {

struct Quaternion {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;  // 1, i, j, k

  double norm2() const noexcept { return a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3; }
  friend Quaternion operator*(const Quaternion& p, const Quaternion& q) noexcept;
};

/// [[a0 + a1 i, a2 + a3 i], [-a2 + a3 i, a0 - a1 i]]
ComplexMatrix nu_embed(const Quaternion& q);

/// Projection of a 2x2 complex block onto the nu-image of the quaternions.
ComplexMatrix q_map(const ComplexMatrix& block);

/// Blockwise q_map of an even-order matrix. DimensionError for odd order.
ComplexMatrix quaternionize(const ComplexMatrix& a);

/// Quaternionic eigenvalues of a 2N x 2N Hermitian matrix: the spectrum of
/// quaternionize(a), whose values come in pairs, with one of each pair kept.
/// Warns when a pair is split by more than 1e-8 of the spread.
std::vector<double> quaternion_eigenvalues(const ComplexMatrix& a);

/// Quaternion shadow density: D(lambda; 2, ..., 2) over the quaternionic
/// eigenvalues.
double quaternion_shadow_density(const ComplexMatrix& a, double x);

}  // namespace shadowlab
