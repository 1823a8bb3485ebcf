#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace shadowlab {

/// Positive Dirichlet weights k_1..k_N with their cached sum.
class DirichletParams {
 public:
  explicit DirichletParams(std::vector<double> k);
  /// N copies of the same weight.
  static DirichletParams uniform(std::size_t n, double k);

  std::span<const double> k() const noexcept { return k_; }
  double operator[](std::size_t i) const noexcept { return k_[i]; }
  std::size_t size() const noexcept { return k_.size(); }
  double k_tilde() const noexcept { return k_tilde_; }

 private:
  std::vector<double> k_;
  double k_tilde_ = 0.0;
};

/// Knots a_1 <= ... <= a_N.
class Spectrum {
 public:
  /// Throws DomainError unless the input is non-empty, finite and ascending.
  explicit Spectrum(std::vector<double> a);
  static Spectrum from_unsorted(std::vector<double> a);

  std::span<const double> values() const noexcept { return a_; }
  double operator[](std::size_t i) const noexcept { return a_[i]; }
  std::size_t size() const noexcept { return a_.size(); }
  double front() const noexcept { return a_.front(); }
  double back() const noexcept { return a_.back(); }
  double span() const noexcept { return a_.back() - a_.front(); }
  /// Smallest gap between neighbouring knots (infinity when N == 1).
  double min_gap() const noexcept;

 private:
  std::vector<double> a_;
};

/// Law of X = sum a_i T_i with T ~ Dirichlet(k).
class PushforwardDist {
 public:
  PushforwardDist(Spectrum spectrum, DirichletParams params);
  /// Pairs (a_i, k_i) in any order; sorted by knot.
  static PushforwardDist from_unsorted(std::vector<double> a, std::vector<double> k);

  const Spectrum& spectrum() const noexcept { return spectrum_; }
  const DirichletParams& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return spectrum_.size(); }

 private:
  Spectrum spectrum_;
  DirichletParams params_;
};

/// Rising factorial (x)_n.
double pochhammer(double x, unsigned n) noexcept;

/// Integral of t^alpha against the Dirichlet(k) probability measure.
double dirichlet_moment(const DirichletParams& params, std::span<const unsigned> alpha);

/// prod (1 - r a_i)^(-k_i) = E[(1 - r X)^(-k~)]. DomainError when some
/// factor 1 - r a_i is not positive.
double mgf_eval(const PushforwardDist& dist, double r);

struct MeanVariance {
  double mean;
  double variance;
};

MeanVariance mean_variance(const PushforwardDist& dist);

struct SurvivalOptions {
  double tol = 1e-12;
  unsigned max_degree = 200;
};

/// 1 - F(x) for a_{N-1} < x <= a_N from the series in powers of (a_N - x),
/// summed degree by degree. DomainError outside that interval,
/// ConvergenceError when the degree cap is hit first.
double survival_series(const PushforwardDist& dist, double x, SurvivalOptions opts = {});

/// Closed-form density for N == 2. Returns +infinity at an endpoint where the
/// corresponding weight is below one.
double density_n2(const PushforwardDist& dist, double x);

/// Tolerance below which two knots are treated as equal.
double knot_tolerance(const Spectrum& spectrum) noexcept;

/// Merges runs of equal knots, summing their weights. `tol` < 0 selects
/// knot_tolerance().
PushforwardDist collapse_knots(const PushforwardDist& dist, double tol = -1.0);

class Rng;

/// One Dirichlet(k) draw via normalized Gamma(k_i, 1) variates.
std::vector<double> sample_simplex(const DirichletParams& params, Rng& rng);
std::vector<double> sample_simplex(const DirichletParams& params, std::uint64_t seed);

}  // namespace shadowlab
