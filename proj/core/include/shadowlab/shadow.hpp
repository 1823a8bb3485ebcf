#pragma once

#include <memory>
#include <string>
#include <vector>

#include "shadowlab/dirichlet.hpp"
#include "shadowlab/linalg.hpp"
#include "shadowlab/realshadow.hpp"
#include "shadowlab/states.hpp"

namespace shadowlab {

/// How a Dirichlet pushforward is evaluated.
enum class Route {
  PointMass,     // one knot
  Beta,          // two knots, any weights
  Spline,        // integer weights
  RealDistinct,  // all weights 1/2, N >= 3
  Unavailable,   // no closed form; Monte Carlo estimate
};

std::string route_name(Route route);

/// Real-density settings used for laws: adaptive quadrature, since CDFs
/// integrate the density right up to the knots.
RealDensityOptions law_density_options();

/// Density and CDF of one D(a; k), dispatched on the collapsed knots.
class PushforwardLaw {
 public:
  explicit PushforwardLaw(const PushforwardDist& dist, RealDensityOptions opts = law_density_options());

  Route route() const noexcept { return route_; }
  bool analytic() const noexcept { return route_ != Route::Unavailable; }
  const PushforwardDist& distribution() const noexcept { return dist_; }

  double density(double x) const;
  double cdf(double x) const;
  MeanVariance moments() const { return mean_variance(dist_); }

 private:
  PushforwardDist dist_;
  Route route_;
  RealDensityOptions opts_;
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Which marginal of a possibly complex shadow to describe.
enum class Part { Real, Imag };

/// Shadow law of a matrix under an ensemble: a mixture of pushforward laws.
/// Non-Hermitian input is reduced to the Hermitian (or symmetric) matrix
/// whose shadow is the requested marginal.
class ShadowLaw {
 public:
  struct Component {
    double weight;
    PushforwardLaw law;
  };

  static ShadowLaw of(const ComplexMatrix& matrix, const EnsembleSpec& ensemble,
                      Part part = Part::Real, RealDensityOptions opts = adaptive_options());

  static RealDensityOptions adaptive_options() { return law_density_options(); }

  double density(double x) const;
  double cdf(double x) const;
  bool analytic() const;
  double mean() const;
  double variance() const;
  double lower() const;
  double upper() const;
  /// Union of the component knots, ascending.
  std::vector<double> knots() const;
  const std::vector<Component>& components() const noexcept { return components_; }

 private:
  std::vector<Component> components_;
};

}  // namespace shadowlab
