#include "shadowlab/states.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "shadowlab/error.hpp"

namespace shadowlab {

EnsembleSpec EnsembleSpec::parse(const std::string& text) {
  if (text == "complex") return {EnsembleKind::ComplexPure, 1};
  if (text == "real") return {EnsembleKind::RealPure, 1};
  if (text == "quaternion") return {EnsembleKind::QuaternionPure, 1};
  if (text == "entangled-complex") return {EnsembleKind::MaxEntangledComplex, 1};
  if (text == "entangled-real") return {EnsembleKind::MaxEntangledReal, 1};
  if (text.rfind("mixed:", 0) == 0) {
    const std::string k = text.substr(6);
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) {
      throw DomainError("mixed ensemble needs a positive integer K");
    }
    const unsigned long K = std::stoul(k);
    if (K == 0 || K > 1u << 20) throw DomainError("mixed ensemble needs a positive integer K");
    return {EnsembleKind::InducedMixed, static_cast<unsigned>(K)};
  }
  throw DomainError("unknown ensemble '" + text + "'");
}

std::string EnsembleSpec::tag() const {
  switch (kind) {
    case EnsembleKind::ComplexPure: return "complex";
    case EnsembleKind::RealPure: return "real";
    case EnsembleKind::QuaternionPure: return "quaternion";
    case EnsembleKind::InducedMixed: return "mixed:" + std::to_string(K);
    case EnsembleKind::MaxEntangledComplex: return "entangled-complex";
    case EnsembleKind::MaxEntangledReal: return "entangled-real";
  }
  return "unknown";
}

StateVector sample_unit_vector(std::size_t n, bool real, Rng& rng) {
  StateVector v(n);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& z : v) {
      z = real ? cplx(rng.normal(), 0.0) : cplx(rng.normal(), rng.normal());
      norm2 += std::norm(z);
    }
  } while (!(norm2 > 0.0));
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : v) z *= inv;
  return v;
}

State sample_pure(EnsembleKind kind, std::size_t n, Rng& rng) {
  if (n == 0) throw DimensionError("state dimension must be positive");
  switch (kind) {
    case EnsembleKind::ComplexPure: return sample_unit_vector(n, false, rng);
    case EnsembleKind::RealPure: return sample_unit_vector(n, true, rng);
    case EnsembleKind::QuaternionPure: {
      // 4N real Gaussians; entry m is the quaternion (g0, g1, g2, g3).
      const StateVector g = sample_unit_vector(2 * n, false, rng);
      std::vector<cplx> e(4 * n);
      for (std::size_t m = 0; m < n; ++m) {
        const cplx x = g[2 * m], y = g[2 * m + 1];  // a0 + a1 i, a2 + a3 i
        e[(2 * m) * 2 + 0] = x;
        e[(2 * m) * 2 + 1] = y;
        e[(2 * m + 1) * 2 + 0] = -std::conj(y);
        e[(2 * m + 1) * 2 + 1] = std::conj(x);
      }
      return QuaternionState{ComplexMatrix(2 * n, 2, std::move(e))};
    }
    default: throw DomainError("sample_pure: not a pure-state ensemble");
  }
}

State sample_pure(EnsembleKind kind, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_pure(kind, n, rng);
}

StateVector max_entangled_real(double theta, bool det_positive) {
  const double c = std::cos(theta) / std::numbers::sqrt2, s = std::sin(theta) / std::numbers::sqrt2;
  if (det_positive) return {c, -s, s, c};
  return {c, s, s, -c};
}

StateVector sample_max_entangled(EnsembleKind kind, Rng& rng) {
  if (kind == EnsembleKind::MaxEntangledReal) {
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const bool det_positive = rng.uniform() < 0.5;
    return max_entangled_real(theta, det_positive);
  }
  if (kind != EnsembleKind::MaxEntangledComplex) {
    throw DomainError("sample_max_entangled: not an entangled ensemble");
  }
  // (alpha, beta) uniform on S^3 gives U = [[alpha, -conj(beta)], [beta, conj(alpha)]]
  // Haar distributed on SU(2).
  const StateVector ab = sample_unit_vector(2, false, rng);
  const double r = 1.0 / std::numbers::sqrt2;
  return {r * ab[0], -r * std::conj(ab[1]), r * ab[1], r * std::conj(ab[0])};
}

ComplexMatrix sample_induced_mixed(std::size_t n, std::size_t K, Rng& rng) {
  if (n == 0 || K == 0) throw DimensionError("induced measure needs N, K >= 1");
  const StateVector psi = sample_unit_vector(n * K, false, rng);
  std::vector<cplx> rho(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t a = 0; a < K; ++a) s += psi[i * K + a] * std::conj(psi[j * K + a]);
      rho[i * n + j] = s;
    }
  return ComplexMatrix(n, std::move(rho));
}

cplx shadow_expectation(const ComplexMatrix& matrix, const State& state) {
  if (const auto* v = std::get_if<StateVector>(&state)) return quadratic_form(matrix, *v);
  if (const auto* q = std::get_if<QuaternionState>(&state)) {
    const ComplexMatrix& nu = q->nu;
    if (matrix.rows() != nu.rows() || !matrix.square()) {
      throw DimensionError("quaternion state does not fit the matrix");
    }
    cplx s = 0.0;
    for (std::size_t c = 0; c < 2; ++c) {
      std::vector<cplx> col(nu.rows());
      for (std::size_t r = 0; r < nu.rows(); ++r) col[r] = nu(r, c);
      s += quadratic_form(matrix, col);
    }
    return 0.5 * s;
  }
  const auto& rho = std::get<ComplexMatrix>(state);
  if (rho.rows() != matrix.rows() || !matrix.square()) throw DimensionError("density matrix does not fit");
  cplx s = 0.0;
  const std::size_t n = rho.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += matrix(i, j) * rho(j, i);
  return s;
}

double EmpiricalSample::ecdf(double x) const {
  if (values.empty()) return 0.0;
  return static_cast<double>(std::upper_bound(values.begin(), values.end(), x) - values.begin()) /
         static_cast<double>(values.size());
}

double EmpiricalSample::mean() const {
  double s = 0.0;
  for (double v : values) s += v;
  return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

double EmpiricalSample::variance() const {
  if (values.size() < 2) return 0.0;
  const double m = mean();
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return s / static_cast<double>(values.size() - 1);
}

namespace {

std::size_t state_dimension(const ComplexMatrix& matrix, const EnsembleSpec& ens) {
  const std::size_t n = matrix.order();
  switch (ens.kind) {
    case EnsembleKind::QuaternionPure:
      if (n % 2 != 0) throw DimensionError("quaternion ensemble needs an even-order matrix");
      return n / 2;
    case EnsembleKind::MaxEntangledComplex:
    case EnsembleKind::MaxEntangledReal:
      if (n != 4) throw DimensionError("entangled ensembles need a 4x4 matrix");
      return 4;
    case EnsembleKind::InducedMixed:
      if (ens.K == 0) throw DomainError("mixed ensemble needs K >= 1");
      return n;
    default: return n;
  }
}

cplx draw(const ComplexMatrix& matrix, const EnsembleSpec& ens, std::size_t dim, Rng& rng) {
  switch (ens.kind) {
    case EnsembleKind::ComplexPure:
    case EnsembleKind::RealPure:
    case EnsembleKind::QuaternionPure:
      return shadow_expectation(matrix, sample_pure(ens.kind, dim, rng));
    case EnsembleKind::InducedMixed:
      return shadow_expectation(matrix, State{sample_induced_mixed(dim, ens.K, rng)});
    case EnsembleKind::MaxEntangledComplex:
    case EnsembleKind::MaxEntangledReal:
      return quadratic_form(matrix, sample_max_entangled(ens.kind, rng));
  }
  return 0.0;
}

}  // namespace

EmpiricalSample collect_shadow(const ComplexMatrix& matrix, const EnsembleSpec& ensemble,
                               std::size_t n, std::uint64_t seed, unsigned threads) {
  if (n == 0) throw DomainError("collect_shadow needs at least one sample");
  const std::size_t dim = state_dimension(matrix, ensemble);
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));

  EmpiricalSample out;
  out.raw.resize(n);
  out.count = n;
  out.seed = seed;
  out.ensemble = ensemble.tag();

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      Rng rng(seed, c);
      const std::size_t end = std::min(n, (c + 1) * kChunkSize);
      for (std::size_t i = c * kChunkSize; i < end; ++i) out.raw[i] = draw(matrix, ensemble, dim, rng);
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = out.raw[i].real();
  std::sort(out.values.begin(), out.values.end());
  if (!matrix.hermitian()) {
    out.imag.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.imag[i] = out.raw[i].imag();
    std::sort(out.imag.begin(), out.imag.end());
  }
  return out;
}

double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
  if (sorted.empty()) throw DomainError("ks_distance needs a non-empty sample");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double x = sorted[i];
    const double before = static_cast<double>(i) / n, after = static_cast<double>(j) / n;
    const double f_left = cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()));
    const double f = cdf(x);
    d = std::max({d, std::abs(after - f), std::abs(before - f_left)});
    i = j;
  }
  return d;
}

double ks_distance(const EmpiricalSample& sample, const std::function<double(double)>& cdf) {
  return ks_distance(sample.values, cdf);
}

double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw DomainError("ks_distance needs non-empty samples");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace shadowlab
