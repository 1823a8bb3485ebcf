#include "shadowlab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "shadowlab/error.hpp"
#include "shadowlab/random.hpp"

namespace shadowlab {

DirichletParams::DirichletParams(std::vector<double> k) : k_(std::move(k)) {
  if (k_.empty()) throw DomainError("Dirichlet parameters must be non-empty");
  for (double ki : k_) {
    if (!(ki > 0.0) || !std::isfinite(ki)) {
      throw DomainError("Dirichlet parameters must be positive and finite");
    }
  }
  k_tilde_ = std::accumulate(k_.begin(), k_.end(), 0.0);
}

DirichletParams DirichletParams::uniform(std::size_t n, double k) {
  return DirichletParams(std::vector<double>(n, k));
}

Spectrum::Spectrum(std::vector<double> a) : a_(std::move(a)) {
  if (a_.empty()) throw DomainError("spectrum must be non-empty");
  for (double v : a_) {
    if (!std::isfinite(v)) throw DomainError("spectrum entries must be finite");
  }
  if (!std::is_sorted(a_.begin(), a_.end())) throw DomainError("spectrum must be ascending");
}

Spectrum Spectrum::from_unsorted(std::vector<double> a) {
  std::sort(a.begin(), a.end());
  return Spectrum(std::move(a));
}

double Spectrum::min_gap() const noexcept {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < a_.size(); ++i) g = std::min(g, a_[i] - a_[i - 1]);
  return g;
}

PushforwardDist::PushforwardDist(Spectrum spectrum, DirichletParams params)
    : spectrum_(std::move(spectrum)), params_(std::move(params)) {
  if (spectrum_.size() != params_.size()) {
    throw DimensionError("spectrum and Dirichlet parameters differ in length");
  }
}

PushforwardDist PushforwardDist::from_unsorted(std::vector<double> a, std::vector<double> k) {
  if (a.size() != k.size()) throw DimensionError("knots and weights differ in length");
  std::vector<std::size_t> idx(a.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return a[i] < a[j]; });
  std::vector<double> as, ks;
  for (std::size_t i : idx) {
    as.push_back(a[i]);
    ks.push_back(k[i]);
  }
  return PushforwardDist(Spectrum(std::move(as)), DirichletParams(std::move(ks)));
}

double pochhammer(double x, unsigned n) noexcept {
  double p = 1.0;
  for (unsigned i = 0; i < n; ++i) p *= x + i;
  return p;
}

double dirichlet_moment(const DirichletParams& params, std::span<const unsigned> alpha) {
  if (alpha.size() != params.size()) throw DimensionError("multi-index length mismatch");
  double num = 1.0;
  unsigned total = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    num *= pochhammer(params[i], alpha[i]);
    total += alpha[i];
  }
  return num / pochhammer(params.k_tilde(), total);
}

double mgf_eval(const PushforwardDist& dist, double r) {
  double logv = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double f = 1.0 - r * dist.spectrum()[i];
    if (!(f > 0.0)) throw DomainError("mgf_eval: r outside the region of convergence");
    logv -= dist.params()[i] * std::log(f);
  }
  return std::exp(logv);
}

MeanVariance mean_variance(const PushforwardDist& dist) {
  const auto& a = dist.spectrum();
  const auto& k = dist.params();
  double mean = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mean += k[i] * a[i];
  mean /= k.k_tilde();
  double var = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) var += k[i] * (a[i] - mean) * (a[i] - mean);
  var /= k.k_tilde() * (k.k_tilde() + 1.0);
  return {mean, var};
}

double survival_series(const PushforwardDist& dist, double x, SurvivalOptions opts) {
  const auto& a = dist.spectrum();
  const auto& k = dist.params();
  const std::size_t n = a.size();
  if (n < 2) throw DomainError("survival_series needs at least two knots");
  const double top = a[n - 1];
  if (!(x > a[n - 2] && x <= top)) {
    throw DomainError("survival_series: x must lie in (a_{N-1}, a_N]");
  }
  if (x == top) return 0.0;

  const double kn = k[n - 1];
  const double rest = k.k_tilde() - kn;
  const double d = top - x;

  double log_pre = std::lgamma(k.k_tilde()) - std::lgamma(kn) - std::lgamma(rest) + rest * std::log(d);
  std::vector<double> z(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    log_pre -= k[i] * std::log(top - a[i]);
    z[i] = 1.0 / (top - a[i]);
  }

  // c[m] is the t^m coefficient of prod (1 - z_i t)^(-k_i), grown one
  // factor at a time. Each factor's series is (k)_n z^n / n!.
  const unsigned cap = opts.max_degree;
  std::vector<double> c(cap + 1, 0.0);
  c[0] = 1.0;
  std::vector<double> f(cap + 1), next(cap + 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    f[0] = 1.0;
    for (unsigned m = 1; m <= cap; ++m) f[m] = f[m - 1] * (k[i] + m - 1) * z[i] / m;
    for (unsigned m = 0; m <= cap; ++m) {
      double s = 0.0;
      for (unsigned j = 0; j <= m; ++j) s += c[j] * f[m - j];
      next[m] = s;
    }
    c.swap(next);
  }

  // term_m = (1 - k_N)_m / (k~ - k_N)_{m+1} * d^m * c_m
  double ratio = 1.0 / rest;
  double dm = 1.0;
  double sum = 0.0;
  for (unsigned m = 0; m <= cap; ++m) {
    const double term = ratio * dm * c[m];
    sum += term;
    const double scaled = std::abs(term) * std::exp(log_pre);
    if (m > 0 && scaled < opts.tol) return std::exp(log_pre) * sum;
    ratio *= (1.0 - kn + m) / (rest + m + 1);
    dm *= d;
  }
  throw ConvergenceError("survival_series: degree cap reached before tolerance");
}

double density_n2(const PushforwardDist& dist, double x) {
  if (dist.size() != 2) throw DimensionError("density_n2 needs exactly two knots");
  const double a1 = dist.spectrum()[0], a2 = dist.spectrum()[1];
  const double k1 = dist.params()[0], k2 = dist.params()[1];
  if (!(a1 < a2)) throw DomainError("density_n2 needs distinct knots");
  if (x < a1 || x > a2) throw DomainError("density_n2: x outside [a1, a2]");
  const double logb = std::lgamma(k1) + std::lgamma(k2) - std::lgamma(k1 + k2);
  return std::pow(a2 - x, k1 - 1.0) * std::pow(x - a1, k2 - 1.0) /
         (std::exp(logb) * std::pow(a2 - a1, k1 + k2 - 1.0));
}

double knot_tolerance(const Spectrum& spectrum) noexcept {
  return 1e-12 * std::max({1.0, std::abs(spectrum.front()), std::abs(spectrum.back())});
}

PushforwardDist collapse_knots(const PushforwardDist& dist, double tol) {
  const auto& a = dist.spectrum();
  const auto& k = dist.params();
  if (tol < 0.0) tol = knot_tolerance(a);
  std::vector<double> as{a[0]}, ks{k[0]};
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] - as.back() <= tol) {
      ks.back() += k[i];
    } else {
      as.push_back(a[i]);
      ks.push_back(k[i]);
    }
  }
  return PushforwardDist(Spectrum(std::move(as)), DirichletParams(std::move(ks)));
}

std::vector<double> sample_simplex(const DirichletParams& params, Rng& rng) {
  std::vector<double> t(params.size());
  double sum = 0.0;
  do {
    sum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = rng.gamma(params[i]);
      sum += t[i];
    }
  } while (!(sum > 0.0));
  for (double& v : t) v /= sum;
  return t;
}

std::vector<double> sample_simplex(const DirichletParams& params, std::uint64_t seed) {
  Rng rng(seed);
  return sample_simplex(params, rng);
}

}  // namespace shadowlab
