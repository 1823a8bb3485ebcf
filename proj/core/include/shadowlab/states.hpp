#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "shadowlab/linalg.hpp"
#include "shadowlab/random.hpp"

namespace shadowlab {

enum class EnsembleKind {
  ComplexPure,
  RealPure,
  QuaternionPure,
  InducedMixed,
  MaxEntangledComplex,
  MaxEntangledReal,
};

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::ComplexPure;
  /// Ancilla dimension for InducedMixed.
  unsigned K = 1;

  /// Accepts complex, real, quaternion, mixed:K, entangled-complex and
  /// entangled-real. DomainError otherwise.
  static EnsembleSpec parse(const std::string& text);
  std::string tag() const;
};

using StateVector = std::vector<cplx>;

/// Unit quaternion vector stored as the stacked 2x2 nu-images of its entries
/// (a 2N x 2 complex matrix).
struct QuaternionState {
  ComplexMatrix nu;
};

using State = std::variant<StateVector, QuaternionState, ComplexMatrix>;

/// Uniform unit vector in C^N (or R^N when `real`).
StateVector sample_unit_vector(std::size_t n, bool real, Rng& rng);

/// Pure state for ComplexPure, RealPure or QuaternionPure. For the quaternion
/// kind `n` is the number of quaternion entries.
State sample_pure(EnsembleKind kind, std::size_t n, Rng& rng);
State sample_pure(EnsembleKind kind, std::size_t n, std::uint64_t seed);

/// vec(O)/sqrt(2) for O in O(2) with angle theta; det = +1 or -1.
StateVector max_entangled_real(double theta, bool det_positive);

/// Maximally entangled two-qubit state: vec(U)/sqrt(2) with U Haar on SU(2)
/// (complex kind) or U uniform on O(2) with each determinant sign taken
/// with probability 1/2 (real kind).
StateVector sample_max_entangled(EnsembleKind kind, Rng& rng);

/// Tr_2 |psi><psi| for psi uniform on the unit sphere of C^N (x) C^K.
ComplexMatrix sample_induced_mixed(std::size_t n, std::size_t K, Rng& rng);

/// <u|A|u>, (1/2) Tr(nu^dagger A nu) or Tr(A rho), depending on the state.
cplx shadow_expectation(const ComplexMatrix& matrix, const State& state);

/// Monte Carlo shadow sample. Real parts (and imaginary parts when the
/// matrix is not Hermitian) are kept sorted; `raw` holds the draws in order.
struct EmpiricalSample {
  std::vector<double> values;
  std::vector<double> imag;
  std::vector<cplx> raw;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::string ensemble;

  bool complex_valued() const noexcept { return !imag.empty(); }
  /// Fraction of real parts <= x.
  double ecdf(double x) const;
  double mean() const;
  double variance() const;
};

/// Draws per chunk; chunk c uses Rng(seed, c), so the output does not depend
/// on the number of worker threads.
inline constexpr std::size_t kChunkSize = 1024;

/// n shadow values of `matrix` under `ensemble`. `threads` == 0 picks the
/// hardware concurrency.
EmpiricalSample collect_shadow(const ComplexMatrix& matrix, const EnsembleSpec& ensemble,
                               std::size_t n, std::uint64_t seed, unsigned threads = 0);

/// Kolmogorov-Smirnov distance between the sorted sample and a CDF, with
/// ties and atoms of the CDF handled through left limits.
double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf);
double ks_distance(const EmpiricalSample& sample, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance of sorted samples.
double ks_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace shadowlab
