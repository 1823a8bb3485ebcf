#include "shadowlab/entangled.hpp"

#include <numbers>

#include "shadowlab/error.hpp"

namespace shadowlab {

namespace {

constexpr double r = 1.0 / std::numbers::sqrt2;
constexpr cplx i_r{0.0, r};

}  // namespace

const ComplexMatrix& IsometryPair::Z1() {
  static const ComplexMatrix m{{r, 0.0}, {0.0, r}, {0.0, -r}, {r, 0.0}};
  return m;
}

const ComplexMatrix& IsometryPair::Z2() {
  static const ComplexMatrix m{{r, 0.0}, {0.0, r}, {0.0, r}, {-r, 0.0}};
  return m;
}

const ComplexMatrix& IsometryPair::W() {
  static const ComplexMatrix m{{0.0, 0.0, r, i_r},
                               {-r, i_r, 0.0, 0.0},
                               {r, i_r, 0.0, 0.0},
                               {0.0, 0.0, r, -i_r}};
  return m;
}

const ComplexMatrix& IsometryPair::sigma_y() {
  static const ComplexMatrix m{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}};
  return m;
}

ComplexMatrix direct_sum_reduce(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2) {
    throw DimensionError("direct_sum_reduce acts on 2x2 blocks");
  }
  const ComplexMatrix& sy = IsometryPair::sigma_y();
  return cplx(0.5) * (a + sy * b.transpose() * sy);
}

std::pair<ComplexMatrix, ComplexMatrix> real_entangled_components(const ComplexMatrix& a) {
  if (a.rows() != 4 || a.cols() != 4) throw DimensionError("entangled reductions need a 4x4 matrix");
  const ComplexMatrix& z1 = IsometryPair::Z1();
  const ComplexMatrix& z2 = IsometryPair::Z2();
  return {z1.transpose() * a * z1, z2.transpose() * a * z2};
}

ComplexMatrix complex_entangled_transform(const ComplexMatrix& a) {
  if (a.rows() != 4 || a.cols() != 4) throw DimensionError("entangled reductions need a 4x4 matrix");
  const ComplexMatrix& w = IsometryPair::W();
  return w.adjoint() * a * w;
}

}  // namespace shadowlab
