#pragma once

#include <utility>

#include "shadowlab/linalg.hpp"

namespace shadowlab {

/// Fixed isometries for two-qubit maximally entangled shadows.
struct IsometryPair {
  /// 4x2 real isometries; Z1 r and Z2 r (r a real unit 2-vector) run over
  /// the det = +1 and det = -1 halves of the real maximally entangled states.
  static const ComplexMatrix& Z1();
  static const ComplexMatrix& Z2();
  /// Magic basis: W r for real unit r gives every complex maximally
  /// entangled state.
  static const ComplexMatrix& W();
  static const ComplexMatrix& sigma_y();
};

/// (A + sigma_y B^T sigma_y) / 2. The maximally entangled shadow of A (+) B
/// equals the shadow of this 2x2 matrix.
ComplexMatrix direct_sum_reduce(const ComplexMatrix& a, const ComplexMatrix& b);

/// (Z1^T A Z1, Z2^T A Z2); the real maximally entangled shadow of A is the
/// equal mixture of the real shadows of the two.
std::pair<ComplexMatrix, ComplexMatrix> real_entangled_components(const ComplexMatrix& a);

/// W^dagger A W; the complex maximally entangled shadow of A is the real
/// shadow of this matrix.
ComplexMatrix complex_entangled_transform(const ComplexMatrix& a);

}  // namespace shadowlab
