#pragma once

#include <span>
#include <vector>

#include "shadowlab/dirichlet.hpp"
#include "shadowlab/linalg.hpp"

namespace shadowlab {

/// Coefficients of prod (1 - r a_i)^(-k_i) = sum_i sum_j beta[i][j-1] (1 - r a_i)^(-j).
struct PartialFractionTable {
  std::vector<double> knots;
  std::vector<std::vector<double>> beta;

  /// Sum of all coefficients; equals 1 (the product at r = 0).
  double total() const noexcept;
  /// Right-hand side of the decomposition at r.
  double reconstruct(double r) const;
};

/// Integer weights for each knot; DomainError unless every entry is a
/// positive integer.
std::vector<unsigned> integer_weights(const DirichletParams& params);

/// Partial fractions for distinct nonzero knots and positive integer
/// weights. Uses the closed multi-index sum when all weights are equal and
/// the sum is small, otherwise the Taylor expansion around each pole.
PartialFractionTable partial_fractions(std::span<const double> knots, std::span<const unsigned> k);

/// Taylor expansion of prod_{j != i} (1 - r a_j)^(-k_j) in u = 1 - r a_i.
PartialFractionTable partial_fractions_taylor(std::span<const double> knots,
                                              std::span<const unsigned> k);

/// Closed multi-index sum for a common weight k.
PartialFractionTable partial_fractions_equal_k(std::span<const double> knots, unsigned k);

/// Piecewise-polynomial density of D(a; k) for positive integer k. Knots are
/// collapsed first, then mapped affinely onto [1, 2] so that no knot sits at
/// the origin and the coefficients stay well scaled.
class SplineDensity {
 public:
  explicit SplineDensity(const PushforwardDist& dist);

  /// Zero outside [a_1, a_N]. For a single knot the law is a point mass and
  /// the density is +infinity at the knot.
  double density(double x) const;
  double cdf(double x) const;

  const PushforwardDist& distribution() const noexcept { return dist_; }
  const PartialFractionTable& table() const noexcept { return table_; }

 private:
  PushforwardDist dist_;
  PartialFractionTable table_;  // in the normalized variable
  unsigned k_tilde_ = 0;
  double origin_ = 0.0;
  double scale_ = 1.0;
  std::vector<std::vector<double>> coef_;  // beta_ij / (b_i B(j, k~ - j))
};

double spline_density(const Spectrum& spectrum, std::span<const unsigned> k, double x);
double spline_cdf(const Spectrum& spectrum, std::span<const unsigned> k, double x);

/// Shadow density under Haar-random complex pure states.
double complex_shadow_density(const ComplexMatrix& matrix, double x);

/// Shadow density under the induced mixed-state measure with ancilla size K.
double mixed_shadow_density(const ComplexMatrix& matrix, unsigned K, double x);

}  // namespace shadowlab
