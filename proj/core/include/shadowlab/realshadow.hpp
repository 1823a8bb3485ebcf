#pragma once

#include <cstddef>
#include <vector>

#include "shadowlab/dirichlet.hpp"
#include "shadowlab/linalg.hpp"
#include "shadowlab/quadrature.hpp"

namespace shadowlab {

struct RealDensityOptions {
  /// Nodes per integral for the fixed-order rule.
  unsigned quad_order = 20;
  /// Replace the fixed-order rules by adaptive Gauss-Kronrod. Needed when
  /// knots crowd each other or x sits close to a knot.
  bool adaptive = false;
  double tol = 1e-13;
  bool warn_near_knot = true;
};

/// Density of D(a; 1/2, ..., 1/2) for N >= 3 distinct knots: an alternating
/// sum of singular integrals over the knot intervals above x, plus a
/// truncated integral from x when x lies in an odd interval (counting from
/// the top). Full integrals use Gauss-Chebyshev; the truncated one uses
/// s = x + (b - x) sin^2(theta) and Gauss-Legendre in theta.
///
/// Accepts the closed interval [a_1, a_N]; returns +infinity at the middle
/// knot for N = 3 (logarithmic singularity). DomainError outside.
double real_density(const Spectrum& spectrum, double x, const RealDensityOptions& opts = {});

/// Shorthand for the adaptive variant.
double real_density_adaptive(const Spectrum& spectrum, double x, double tol = 1e-13);

/// N = 3 closed forms: E(a1, a2; x, a3)/2 above the middle knot and
/// E(a1, x; a2, a3)/2 below it.
double real_density_n3(const Spectrum& spectrum, double x);

/// T_k f = sum_j (-1)^j ((N-j)/N) ((N(k-1))_j / j!) P^(j) f^(N-1-j) with
/// P(x) = prod (x - a_i).
class ShadowOdeOperator {
 public:
  ShadowOdeOperator(Spectrum knots, double k);

  std::size_t order() const noexcept { return knots_.size() - 1; }
  const Spectrum& knots() const noexcept { return knots_; }
  double k() const noexcept { return k_; }

  /// Coefficient multiplying f^(m) at x, for m = 0..N-1.
  double coefficient(std::size_t m, double x) const;
  /// T_k f at x given derivs[m] = f^(m)(x).
  double apply(const std::vector<double>& derivs, double x) const;

  /// P(x) coefficients in ascending powers.
  const std::vector<double>& polynomial() const noexcept { return poly_; }

 private:
  Spectrum knots_;
  double k_;
  std::vector<double> poly_;
  std::vector<double> weight_;  // (-1)^j ((N-j)/N) ((N(k-1))_j / j!)
};

/// Derivatives f^(0..m) at x from central Fornberg stencils with one
/// Richardson step. `h` is the coarse step.
std::vector<double> finite_difference_derivatives(const RealFunction& f, double x,
                                                  std::size_t max_order, double h);

struct OdeResidual {
  double residual;  // T_k f(x)
  double scale;     // sum of |coefficient * derivative| over the terms
  double noise;     // rounding noise of the stencils plus the truncation estimate
};

/// Evaluates T_k f(x) by finite differences. `f_error` is the absolute error
/// of one evaluation of f; a negative value selects 1e-14 * |f(x)|. Stencils
/// stay inside the knot interval containing x. The step is halved from the
/// rounding-optimal value and the change between successive steps is added to
/// the noise floor as a truncation estimate.
OdeResidual ode_residual(const Spectrum& knots, double k, const RealFunction& f, double x,
                         double f_error = -1.0);

struct KnotContinuity {
  std::size_t index;  // 0-based knot index
  double knot;
  /// |f^(j)(a+) - f^(j)(a-)| / scale_j for j = 0..orders.
  std::vector<double> mismatch;
  /// First order whose mismatch exceeds the threshold, or -1.
  int first_jump;
};

struct ContinuityReport {
  std::size_t orders_checked;
  double threshold;
  std::vector<KnotContinuity> knots;  // every knot; outside the support f = 0
};

/// One-sided derivatives of the real density at each interior knot, from
/// least-squares fits of the local expansion on either side (a polynomial
/// plus the singular |x - a|^((N-3)/2 + n) series for even N, or the
/// |x - a|^(M-1+n) log|x - a| series for N = 2M + 1). Checks orders
/// 0..floor(N/2)-1.
ContinuityReport knot_continuity_report(const Spectrum& spectrum, double threshold = 1e-3);

struct DensityEstimate {
  double value;
  bool analytic;  // false when the value is a Monte Carlo estimate
};

/// Real shadow of a real symmetric matrix. Repeated eigenvalues are
/// collapsed with weight 1/2 per copy; the law then goes to the point mass,
/// the N = 2 beta density, the distinct-knot formula, or the spline formula
/// (all weights integer). Other repetition patterns fall back to a Monte
/// Carlo histogram estimate flagged as non-analytic.
DensityEstimate real_shadow_density(const ComplexMatrix& matrix, double x);

}  // namespace shadowlab
