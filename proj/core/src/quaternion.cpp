#include "shadowlab/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shadowlab/error.hpp"
#include "shadowlab/spline.hpp"

namespace shadowlab {

Quaternion operator*(const Quaternion& p, const Quaternion& q) noexcept {
  return {p.a0 * q.a0 - p.a1 * q.a1 - p.a2 * q.a2 - p.a3 * q.a3,
          p.a0 * q.a1 + p.a1 * q.a0 + p.a2 * q.a3 - p.a3 * q.a2,
          p.a0 * q.a2 - p.a1 * q.a3 + p.a2 * q.a0 + p.a3 * q.a1,
          p.a0 * q.a3 + p.a1 * q.a2 - p.a2 * q.a1 + p.a3 * q.a0};
}

ComplexMatrix nu_embed(const Quaternion& q) {
  return ComplexMatrix{{cplx(q.a0, q.a1), cplx(q.a2, q.a3)},
                       {cplx(-q.a2, q.a3), cplx(q.a0, -q.a1)}};
}

ComplexMatrix q_map(const ComplexMatrix& b) {
  if (b.rows() != 2 || b.cols() != 2) throw DimensionError("q_map acts on 2x2 blocks");
  return ComplexMatrix{{0.5 * (b(0, 0) + std::conj(b(1, 1))), 0.5 * (b(0, 1) - std::conj(b(1, 0)))},
                       {0.5 * (b(1, 0) - std::conj(b(0, 1))), 0.5 * (std::conj(b(0, 0)) + b(1, 1))}};
}

ComplexMatrix quaternionize(const ComplexMatrix& a) {
  const std::size_t n = a.order();
  if (n % 2 != 0) throw DimensionError("quaternionize needs even order");
  std::vector<cplx> e(n * n);
  for (std::size_t bi = 0; bi < n; bi += 2) {
    for (std::size_t bj = 0; bj < n; bj += 2) {
      const ComplexMatrix q = q_map(ComplexMatrix{{a(bi, bj), a(bi, bj + 1)},
                                                  {a(bi + 1, bj), a(bi + 1, bj + 1)}});
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) e[(bi + r) * n + bj + c] = q(r, c);
    }
  }
  return ComplexMatrix(n, std::move(e));
}

std::vector<double> quaternion_eigenvalues(const ComplexMatrix& a) {
  if (!a.hermitian()) throw DomainError("quaternion shadow needs a Hermitian matrix");
  const auto ev = eigenvalues_hermitian(quaternionize(a));
  const double spread = std::max(1.0, ev.back() - ev.front());
  std::vector<double> out;
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < ev.size(); i += 2) {
    out.push_back(0.5 * (ev[i] + ev[i + 1]));
    worst = std::max(worst, ev[i + 1] - ev[i]);
  }
  if (worst > 1e-8 * spread) {
    std::ostringstream msg;
    msg << "quaternion spectrum: eigenvalue pair split by " << worst;
    warn(msg.str());
  }
  return out;
}

double quaternion_shadow_density(const ComplexMatrix& a, double x) {
  auto ev = quaternion_eigenvalues(a);
  const std::size_t n = ev.size();
  return SplineDensity(PushforwardDist(Spectrum(std::move(ev)), DirichletParams::uniform(n, 2.0)))
      .density(x);
}

}  // namespace shadowlab
