#include "shadowlab/spline.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "shadowlab/error.hpp"

namespace shadowlab {

double PartialFractionTable::total() const noexcept {
  double s = 0.0;
  for (const auto& row : beta)
    for (double b : row) s += b;
  return s;
}

double PartialFractionTable::reconstruct(double r) const {
  double s = 0.0;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const double base = 1.0 - r * knots[i];
    double p = 1.0;
    for (double b : beta[i]) {
      p *= base;
      s += b / p;
    }
  }
  return s;
}

std::vector<unsigned> integer_weights(const DirichletParams& params) {
  std::vector<unsigned> k(params.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double v = params[i];
    const double r = std::round(v);
    if (r < 1.0 || std::abs(v - r) > 1e-12 * r || r > 1e6) {
      throw DomainError("spline densities need positive integer weights");
    }
    k[i] = static_cast<unsigned>(r);
  }
  return k;
}

namespace {

void check_knots(std::span<const double> knots, std::size_t nk) {
  if (knots.size() != nk) throw DimensionError("knots and weights differ in length");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (knots[i] == 0.0) throw DomainError("partial fractions need nonzero knots");
    for (std::size_t j = 0; j < i; ++j) {
      if (knots[i] == knots[j]) throw DomainError("partial fractions need distinct knots");
    }
  }
}

// Number of multi-indices the closed form visits for one knot.
double enumeration_size(std::size_t n, unsigned k) {
  double total = 0.0;
  for (unsigned m = 0; m < k; ++m) {
    // C(m + n - 2, n - 2)
    double c = 1.0;
    for (std::size_t t = 1; t + 1 < n; ++t) c = c * (m + t) / t;
    total += c;
  }
  return total * static_cast<double>(n);
}

}  // namespace

PartialFractionTable partial_fractions_taylor(std::span<const double> knots,
                                              std::span<const unsigned> k) {
  check_knots(knots, k.size());
  const std::size_t n = knots.size();
  PartialFractionTable t;
  t.knots.assign(knots.begin(), knots.end());
  t.beta.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned ki = k[i];
    const double ai = knots[i];
    // With u = 1 - r a_i, 1 - r a_j = c_j (1 + w_j u).
    std::vector<double> series(ki, 0.0);
    series[0] = 1.0;
    double log_scale = 0.0;
    double sign = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double cj = 1.0 - knots[j] / ai;
      const double wj = knots[j] / (ai - knots[j]);
      log_scale -= k[j] * std::log(std::abs(cj));
      if (cj < 0.0 && k[j] % 2 == 1) sign = -sign;
      std::vector<double> f(ki);
      f[0] = 1.0;
      for (unsigned m = 1; m < ki; ++m) f[m] = f[m - 1] * (-wj) * (k[j] + m - 1.0) / m;
      std::vector<double> next(ki, 0.0);
      for (unsigned m = 0; m < ki; ++m)
        for (unsigned l = 0; l <= m; ++l) next[m] += series[l] * f[m - l];
      series.swap(next);
    }
    const double scale = sign * std::exp(log_scale);
    t.beta[i].resize(ki);
    for (unsigned m = 0; m < ki; ++m) t.beta[i][ki - 1 - m] = scale * series[m];
  }
  return t;
}

PartialFractionTable partial_fractions_equal_k(std::span<const double> knots, unsigned k) {
  if (k == 0) throw DomainError("weights must be positive");
  check_knots(knots, knots.size());
  const std::size_t n = knots.size();
  PartialFractionTable t;
  t.knots.assign(knots.begin(), knots.end());
  t.beta.assign(n, std::vector<double>(k, 0.0));

  for (std::size_t i = 0; i < n; ++i) {
    const double ai = knots[i];
    // a_i^{(N-1)k} prod_j (a_i - a_j)^{-k}, accumulated as a product of ratios.
    double lead = 1.0;
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      others.push_back(j);
      lead *= std::pow(ai / (ai - knots[j]), static_cast<double>(k));
    }
    for (unsigned m = 0; m < k; ++m) {
      // Sum over alpha with |alpha| = m supported on `others`.
      double sum = 0.0;
      std::vector<unsigned> alpha(others.size(), 0);
      auto visit = [&](auto&& self, std::size_t pos, unsigned left) -> void {
        if (pos + 1 == others.size() || others.empty()) {
          if (!others.empty()) alpha[pos] = left;
          else if (left != 0) return;
          double term = 1.0;
          for (std::size_t p = 0; p < others.size(); ++p) {
            const std::size_t j = others[p];
            const double ratio = knots[j] / (ai - knots[j]);
            term *= pochhammer(static_cast<double>(k), alpha[p]) * std::pow(ratio, alpha[p]) /
                    std::tgamma(alpha[p] + 1.0);
          }
          sum += term;
          return;
        }
        for (unsigned v = 0; v <= left; ++v) {
          alpha[pos] = v;
          self(self, pos + 1, left - v);
        }
      };
      visit(visit, 0, m);
      t.beta[i][k - 1 - m] = ((m % 2) ? -1.0 : 1.0) * lead * sum;
    }
  }
  return t;
}

PartialFractionTable partial_fractions(std::span<const double> knots, std::span<const unsigned> k) {
  const bool equal = !k.empty() && std::all_of(k.begin(), k.end(), [&](unsigned v) { return v == k[0]; });
  if (equal && enumeration_size(knots.size(), k[0]) <= 2e5) {
    check_knots(knots, k.size());
    return partial_fractions_equal_k(knots, k[0]);
  }
  return partial_fractions_taylor(knots, k);
}

SplineDensity::SplineDensity(const PushforwardDist& dist) : dist_(collapse_knots(dist)) {
  integer_weights(dist.params());
  const Spectrum& a = dist_.spectrum();
  if (a.size() > 1 && a.min_gap() < 1e-6 * a.span()) {
    std::ostringstream msg;
    msg << "spline density: knot gap " << a.min_gap() << " below 1e-6 of the span; "
        << "merging close knots";
    warn(msg.str());
    dist_ = collapse_knots(dist_, 1e-6 * a.span());
  }
  const auto k = integer_weights(dist_.params());
  k_tilde_ = std::accumulate(k.begin(), k.end(), 0u);
  const Spectrum& s = dist_.spectrum();
  origin_ = s.front();
  if (s.size() == 1) return;
  scale_ = s.span();
  std::vector<double> b(s.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = 1.0 + (s[i] - origin_) / scale_;
  b.front() = 1.0;
  b.back() = 2.0;
  table_ = partial_fractions(b, k);
  coef_.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    coef_[i].resize(k[i]);
    for (unsigned j = 1; j <= k[i]; ++j) {
      coef_[i][j - 1] = table_.beta[i][j - 1] /
                        (b[i] * boost::math::beta(static_cast<double>(j),
                                                  static_cast<double>(k_tilde_ - j)));
    }
  }
}

double SplineDensity::density(double x) const {
  const Spectrum& s = dist_.spectrum();
  if (s.size() == 1) return x == s.front() ? std::numeric_limits<double>::infinity() : 0.0;
  if (x < s.front() || x > s.back()) return 0.0;
  const double y = 1.0 + (x - origin_) / scale_;
  double f = 0.0;
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    const double bi = table_.knots[i];
    const double u = y / bi;
    const double v = 1.0 - u;
    if (v < 0.0) continue;
    for (unsigned j = 1; j <= coef_[i].size(); ++j) {
      const unsigned e = k_tilde_ - j - 1;
      f += coef_[i][j - 1] * std::pow(u, j - 1.0) * (e == 0 ? 1.0 : std::pow(v, e));
    }
  }
  return std::max(f, 0.0) / scale_;
}

double SplineDensity::cdf(double x) const {
  const Spectrum& s = dist_.spectrum();
  if (x < s.front()) return 0.0;
  if (x >= s.back()) return 1.0;
  const double y = 1.0 + (x - origin_) / scale_;
  double F = 0.0;
  for (std::size_t i = 0; i < table_.knots.size(); ++i) {
    const double u = std::min(y / table_.knots[i], 1.0);
    for (unsigned j = 1; j <= table_.beta[i].size(); ++j) {
      F += table_.beta[i][j - 1] *
           boost::math::ibeta(static_cast<double>(j), static_cast<double>(k_tilde_ - j), u);
    }
  }
  return std::clamp(F, 0.0, 1.0);
}

namespace {

PushforwardDist integer_dist(const Spectrum& spectrum, std::span<const unsigned> k) {
  std::vector<double> kd(k.begin(), k.end());
  return PushforwardDist(spectrum, DirichletParams(std::move(kd)));
}

PushforwardDist matrix_dist(const ComplexMatrix& matrix, unsigned K) {
  if (!matrix.hermitian()) throw DomainError("shadow density needs a Hermitian matrix");
  if (K == 0) throw DomainError("ancilla dimension must be positive");
  auto ev = eigenvalues_hermitian(matrix);
  const std::size_t n = ev.size();
  return PushforwardDist(Spectrum(std::move(ev)), DirichletParams::uniform(n, K));
}

}  // namespace

double spline_density(const Spectrum& spectrum, std::span<const unsigned> k, double x) {
  return SplineDensity(integer_dist(spectrum, k)).density(x);
}

double spline_cdf(const Spectrum& spectrum, std::span<const unsigned> k, double x) {
  return SplineDensity(integer_dist(spectrum, k)).cdf(x);
}

double complex_shadow_density(const ComplexMatrix& matrix, double x) {
  return SplineDensity(matrix_dist(matrix, 1)).density(x);
}

double mixed_shadow_density(const ComplexMatrix& matrix, unsigned K, double x) {
  return SplineDensity(matrix_dist(matrix, K)).density(x);
}

}  // namespace shadowlab
