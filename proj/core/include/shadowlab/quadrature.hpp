#pragma once

#include <functional>
#include <span>
#include <vector>

namespace shadowlab {

using RealFunction = std::function<double(double)>;

/// n-point Gauss-Chebyshev rule for (1/pi) * int_a^b h(s) ((b-s)(s-a))^(-1/2) ds.
double gauss_chebyshev(const RealFunction& h, double a, double b, unsigned n);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point Gauss-Legendre rule; safe to call from several threads.
const GaussRule& gauss_legendre(unsigned n);

double integrate_gauss_legendre(const RealFunction& f, double a, double b, unsigned n);

/// Globally adaptive Gauss-Kronrod (61 points). Intended for integrands that
/// are finite on the closed interval.
double integrate_adaptive(const RealFunction& f, double a, double b, double tol = 1e-12,
                          double* error_estimate = nullptr);

/// Tanh-sinh rule; tolerates integrable endpoint singularities because the
/// endpoints themselves are never evaluated.
double integrate_tanh_sinh(const RealFunction& f, double a, double b, double tol = 1e-12,
                           double* error_estimate = nullptr);

/// CDF of a density that is smooth between known breakpoints but may be
/// singular at them. Panels are graded geometrically toward every breakpoint.
/// Each regular panel keeps the Legendre expansion of the density through its
/// 16 Gauss nodes, so queries integrate that polynomial exactly; only the
/// sliver touching a breakpoint is integrated on demand.
class NumericCdf {
 public:
  /// `breakpoints` must be ascending with the support ends first and last.
  NumericCdf(RealFunction density, std::span<const double> breakpoints,
             unsigned panels_per_interval = 48);

  double operator()(double x) const;
  /// Mass of the whole support (1 for a normalized density).
  double total() const noexcept { return cumulative_.back(); }
  double lower() const noexcept { return edges_.front(); }
  double upper() const noexcept { return edges_.back(); }

 private:
  double singular_integral(double lo, double hi) const;

  RealFunction density_;
  std::vector<double> edges_;
  enum class Panel : unsigned char { Smooth, Graded, Singular };
  std::vector<Panel> kind_;
  std::vector<double> cumulative_;
  std::vector<std::vector<double>> legendre_;  // per regular panel, empty next to knots
};

}  // namespace shadowlab
