#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "shadowlab/dirichlet.hpp"
#include "shadowlab/linalg.hpp"
#include "shadowlab/quadrature.hpp"
#include "shadowlab/random.hpp"

namespace shadowlab::testing {

// Sorted knots drawn uniformly from [lo, hi] with every gap at least
// min_gap_fraction * (hi - lo).
inline Spectrum random_spectrum(Rng& rng, std::size_t n, double lo = -2.0, double hi = 3.0,
                                double min_gap_fraction = 0.02) {
  for (;;) {
    std::vector<double> a(n);
    for (auto& v : a) v = lo + (hi - lo) * rng.uniform();
    std::sort(a.begin(), a.end());
    bool ok = true;
    for (std::size_t i = 1; i < n; ++i) ok = ok && a[i] - a[i - 1] >= min_gap_fraction * (hi - lo);
    if (ok) return Spectrum(a);
  }
}

// Integral of g(x) f(x) over the support, split at the knots so that endpoint
// singularities of f sit at panel ends.
inline double integrate_over_knots(const RealFunction& f, const Spectrum& knots,
                                   const RealFunction& g = {}) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    total += integrate_tanh_sinh(
        [&](double x) { return g ? g(x) * f(x) : f(x); }, knots[i], knots[i + 1], 1e-11);
  }
  return total;
}

inline ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i * n + i] = rng.normal();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx z(rng.normal(), rng.normal());
      e[i * n + j] = z;
      e[j * n + i] = std::conj(z);
    }
  }
  return ComplexMatrix(n, std::move(e));
}

inline ComplexMatrix random_real_symmetric(Rng& rng, std::size_t n) {
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = rng.normal();
      e[i * n + j] = v;
      e[j * n + i] = v;
    }
  }
  return ComplexMatrix(n, std::move(e));
}

inline ComplexMatrix random_complex(Rng& rng, std::size_t n) {
  std::vector<cplx> e(n * n);
  for (auto& z : e) z = cplx(rng.normal(), rng.normal());
  return ComplexMatrix(n, std::move(e));
}

// Haar unitary by Gram-Schmidt on a complex Gaussian matrix.
inline ComplexMatrix random_unitary(Rng& rng, std::size_t n, bool real = false) {
  std::vector<std::vector<cplx>> cols(n, std::vector<cplx>(n));
  for (auto& c : cols) {
    for (auto& z : c) z = real ? cplx(rng.normal(), 0.0) : cplx(rng.normal(), rng.normal());
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t p = 0; p < j; ++p) {
      cplx dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(cols[p][i]) * cols[j][i];
      for (std::size_t i = 0; i < n; ++i) cols[j][i] -= dot * cols[p][i];
    }
    double norm = 0.0;
    for (const auto& z : cols[j]) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (auto& z : cols[j]) z /= norm;
  }
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = cols[j][i];
  }
  return ComplexMatrix(n, std::move(e));
}

}  // namespace shadowlab::testing
