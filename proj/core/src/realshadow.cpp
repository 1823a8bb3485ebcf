#include "shadowlab/realshadow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "shadowlab/error.hpp"
#include "shadowlab/random.hpp"
#include "shadowlab/special.hpp"
#include "shadowlab/spline.hpp"

namespace shadowlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// prod_{m != skip1, skip2} |s - a_m|^(-1/2) with s = anchor + delta. Taking
// the differences from the anchor keeps them accurate when s sits close to a
// knot and delta is small.
double inv_sqrt_product(std::span<const double> a, double anchor, double delta,
                        std::size_t skip1, std::size_t skip2) {
  double p = 1.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (m == skip1 || m == skip2) continue;
    p *= std::abs((anchor - a[m]) + delta);
  }
  return 1.0 / std::sqrt(p);
}

// Integral of f over [0, len] where f has integrable near-singularities just
// beyond either end, at distances of order scale0 and scale1. Panels double in
// width away from each end so every one of them sees a smooth integrand.
double graded_integral(const RealFunction& f, double len, double scale0, double scale1,
                       double tol) {
  const double finest = std::ldexp(len, -48);
  std::vector<double> left, right;
  for (double t = std::max(scale0, finest); t < 0.25 * len; t *= 2.0) left.push_back(t);
  for (double t = std::max(scale1, finest); t < 0.25 * len; t *= 2.0) right.push_back(len - t);
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), left.begin(), left.end());
  edges.insert(edges.end(), right.rbegin(), right.rend());
  edges.push_back(len);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const bool at_end = (k == 0 && scale0 == 0.0) || (k + 2 == edges.size() && scale1 == 0.0);
    total += at_end ? integrate_tanh_sinh(f, edges[k], edges[k + 1], tol)
                    : integrate_adaptive(f, edges[k], edges[k + 1], tol);
  }
  return total;
}

void check_distinct(const Spectrum& spectrum) {
  if (spectrum.size() < 3) throw DomainError("real_density needs at least three knots");
  if (!(spectrum.min_gap() > 0.0)) throw DomainError("real_density needs distinct knots");
}

}  // namespace

double real_density(const Spectrum& spectrum, double x, const RealDensityOptions& opts) {
  check_distinct(spectrum);
  const auto a = spectrum.values();
  const std::size_t n = a.size();
  if (!(x >= a.front() && x <= a.back())) throw DomainError("real_density: x outside [a_1, a_N]");

  std::size_t i = static_cast<std::size_t>(std::upper_bound(a.begin(), a.end(), x) - a.begin()) - 1;
  if (i == n - 1) i = n - 2;
  if (opts.warn_near_knot) {
    const double near = 1e-8 * spectrum.span();
    for (std::size_t m = 1; m + 1 < n; ++m) {
      const double d = std::abs(x - a[m]);
      if (d > 0.0 && d < near) {
        std::ostringstream msg;
        msg << "real_density: x = " << x << " is within 1e-8 of the knot " << a[m];
        warn(msg.str());
        break;
      }
    }
  }
  if (n == 3 && x == a[1]) return kInf;

  const std::size_t q = n - 1 - i;  // interval number counted from the top
  const std::size_t M = q / 2;
  const double p = 0.5 * n - 2.0;
  const double C = (n - 2.0) / (2.0 * std::numbers::pi);

  double sum = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    const std::size_t lo = n - 2 * j - 2, hi = n - 2 * j - 1;
    auto h = [&](double anchor, double delta) {
      return inv_sqrt_product(a, anchor, delta, lo, hi) * std::pow((anchor - x) + delta, p);
    };
    double full;
    if (opts.adaptive) {
      // s = a_lo + 2 half sin^2(phi/2), written from whichever end is nearer.
      const double half = 0.5 * (a[hi] - a[lo]);
      auto integrand = [&](double phi) {
        if (phi <= 0.5 * std::numbers::pi) {
          const double t = std::sin(0.5 * phi);
          return h(a[lo], 2.0 * half * t * t);
        }
        const double t = std::sin(0.5 * (std::numbers::pi - phi));
        return h(a[hi], -2.0 * half * t * t);
      };
      // s - a_lo ~ half * phi^2 / 2 near phi = 0, and symmetrically at pi.
      const double below = std::max(x, lo > 0 ? a[lo - 1] : x);
      const double above = hi + 1 < n ? a[hi + 1] : kInf;
      full = graded_integral(integrand, std::numbers::pi, std::sqrt(2.0 * (a[lo] - below) / half),
                             std::sqrt(2.0 * (above - a[hi]) / half), opts.tol);
    } else {
      full = std::numbers::pi *
             gauss_chebyshev([&](double s) { return h(s, 0.0); }, a[lo], a[hi], opts.quad_order);
    }
    sum += (j % 2 ? -full : full);
  }

  if (q % 2 == 1) {
    const std::size_t bi = n - 2 * M - 1;
    const double b = a[bi];
    const double w = b - x;
    auto g = [&](double theta) {
      const double st = std::sin(theta);
      return std::pow(st, 2.0 * p + 1.0) * inv_sqrt_product(a, x, w * st * st, bi, bi);
    };
    double integral;
    if (opts.adaptive) {
      // s - x = w sin^2(theta), so a knot at distance d sits at theta ~ sqrt(d / w).
      const double above = bi + 1 < n ? a[bi + 1] - b : kInf;
      integral = graded_integral(g, 0.5 * std::numbers::pi, std::sqrt((x - a[i]) / w),
                                 std::sqrt(above / w), opts.tol);
    } else {
      integral = integrate_gauss_legendre(g, 0.0, 0.5 * std::numbers::pi, opts.quad_order);
    }
    const double trunc = 2.0 * std::pow(w, p + 0.5) * integral;
    sum += (M % 2 ? -trunc : trunc);
  }
  return C * sum;
}

double real_density_adaptive(const Spectrum& spectrum, double x, double tol) {
  RealDensityOptions opts;
  opts.adaptive = true;
  opts.tol = tol;
  return real_density(spectrum, x, opts);
}

double real_density_n3(const Spectrum& spectrum, double x) {
  if (spectrum.size() != 3) throw DomainError("real_density_n3 needs exactly three knots");
  check_distinct(spectrum);
  const double a1 = spectrum[0], a2 = spectrum[1], a3 = spectrum[2];
  if (!(x >= a1 && x <= a3)) throw DomainError("real_density_n3: x outside [a_1, a_3]");
  if (x == a2) return kInf;
  if (x > a2) return 0.5 * elliptic_E(a1, a2, x, a3);
  if (x == a1) return 0.5 / std::sqrt((a2 - a1) * (a3 - a1));
  return 0.5 * elliptic_E(a1, x, a2, a3);
}

ShadowOdeOperator::ShadowOdeOperator(Spectrum knots, double k) : knots_(std::move(knots)), k_(k) {
  if (!(k > 0.0)) throw DomainError("ODE weight k must be positive");
  const std::size_t n = knots_.size();
  if (n < 2) throw DomainError("ODE operator needs at least two knots");
  poly_.assign(1, 1.0);
  for (double r : knots_.values()) {
    std::vector<double> next(poly_.size() + 1, 0.0);
    for (std::size_t d = 0; d < poly_.size(); ++d) {
      next[d + 1] += poly_[d];
      next[d] -= r * poly_[d];
    }
    poly_.swap(next);
  }
  weight_.resize(n);
  const double nk = static_cast<double>(n) * (k - 1.0);
  double poch_over_fact = 1.0;  // (N(k-1))_j / j!
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) poch_over_fact *= (nk + j - 1.0) / static_cast<double>(j);
    weight_[j] = (j % 2 ? -1.0 : 1.0) * (static_cast<double>(n - j) / n) * poch_over_fact;
  }
}

double ShadowOdeOperator::coefficient(std::size_t m, double x) const {
  const std::size_t n = knots_.size();
  if (m >= n) throw DomainError("derivative order exceeds the operator order");
  const std::size_t j = n - 1 - m;
  // j-th derivative of P at x by Horner on the differentiated coefficients.
  double v = 0.0;
  for (std::size_t d = poly_.size(); d-- > j;) {
    double c = poly_[d];
    for (std::size_t t = 0; t < j; ++t) c *= static_cast<double>(d - t);
    v = v * x + c;
  }
  return weight_[j] * v;
}

double ShadowOdeOperator::apply(const std::vector<double>& derivs, double x) const {
  if (derivs.size() < knots_.size()) throw DimensionError("need derivatives up to order N-1");
  double s = 0.0;
  for (std::size_t m = 0; m < knots_.size(); ++m) s += coefficient(m, x) * derivs[m];
  return s;
}

namespace {

// Fornberg's recursion: weights[m][i] for the m-th derivative at 0 using
// nodes z.
std::vector<std::vector<double>> fornberg(const std::vector<double>& z, std::size_t max_order) {
  const std::size_t n = z.size();
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0, c4 = z[0];
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = z[i];
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = z[i] - z[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

struct Stencil {
  std::size_t radius;
  std::vector<std::vector<double>> unit_weights;  // step 1
};

Stencil central_stencil(std::size_t max_order) {
  Stencil s;
  s.radius = (max_order + 1) / 2 + 1;
  std::vector<double> z;
  for (long t = -static_cast<long>(s.radius); t <= static_cast<long>(s.radius); ++t) z.push_back(t);
  s.unit_weights = fornberg(z, max_order);
  return s;
}

// Leading error order of the central stencil for the m-th derivative.
int accuracy_order(std::size_t points, std::size_t m) {
  return 2 * static_cast<int>((points - m + 1) / 2);
}

}  // namespace

std::vector<double> finite_difference_derivatives(const RealFunction& f, double x,
                                                  std::size_t max_order, double h) {
  const Stencil st = central_stencil(max_order);
  const std::size_t pts = 2 * st.radius + 1;
  std::vector<double> coarse(pts), fine(pts);
  for (std::size_t i = 0; i < pts; ++i) {
    const double t = static_cast<double>(i) - static_cast<double>(st.radius);
    coarse[i] = f(x + h * t);
    fine[i] = f(x + 0.5 * h * t);
  }
  std::vector<double> d(max_order + 1);
  d[0] = coarse[st.radius];
  for (std::size_t m = 1; m <= max_order; ++m) {
    double dc = 0.0, df = 0.0;
    for (std::size_t i = 0; i < pts; ++i) {
      dc += st.unit_weights[m][i] * coarse[i];
      df += st.unit_weights[m][i] * fine[i];
    }
    dc /= std::pow(h, static_cast<double>(m));
    df /= std::pow(0.5 * h, static_cast<double>(m));
    const double r = std::ldexp(1.0, accuracy_order(pts, m));
    d[m] = (r * df - dc) / (r - 1.0);
  }
  return d;
}

OdeResidual ode_residual(const Spectrum& knots, double k, const RealFunction& f, double x,
                         double f_error) {
  const ShadowOdeOperator op(knots, k);
  const std::size_t order = op.order();
  const auto a = knots.values();
  double dist = kInf;
  for (double v : a) dist = std::min(dist, std::abs(x - v));
  if (!(dist > 0.0)) throw DomainError("ode_residual: x must not be a knot");
  const Stencil st = central_stencil(order);
  const std::size_t pts = 2 * st.radius + 1;
  const double span = std::max(knots.span(), std::numeric_limits<double>::min());
  const double h_opt =
      span * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (order + 6.0));
  const double h0 = std::min(h_opt, dist / (st.radius + 1.0));

  std::vector<double> coef(order + 1);
  for (std::size_t m = 0; m <= order; ++m) coef[m] = op.coefficient(m, x);
  const double fx = std::abs(f(x));
  const double f_err =
      f_error >= 0.0 ? f_error : 1e-14 * std::max(fx, std::numeric_limits<double>::min());

  // Residual at step h with its propagated rounding noise.
  auto at_step = [&](double h) {
    const auto d = finite_difference_derivatives(f, x, order, h);
    OdeResidual r{0.0, 0.0, 0.0};
    for (std::size_t m = 0; m <= order; ++m) {
      const double term = coef[m] * d[m];
      r.residual += term;
      r.scale += std::abs(term);
      double wsum = 0.0;
      for (double w : st.unit_weights[m]) wsum += std::abs(w);
      const double ratio = m == 0 ? 1.0 : std::ldexp(1.0, accuracy_order(pts, m));
      const double amp = m == 0 ? 1.0
                                : (ratio * wsum / std::pow(0.5 * h, static_cast<double>(m)) +
                                   wsum / std::pow(h, static_cast<double>(m))) /
                                      (ratio - 1.0);
      r.noise += std::abs(coef[m]) * f_err * amp;
    }
    return r;
  };

  // Halve the step while the change between successive steps (the truncation
  // estimate) still dominates; keep the step with the smallest total floor.
  // The estimate takes the larger of the last two changes, since a single
  // change can be small by accident before the asymptotic regime.
  constexpr int kMaxHalvings = 8;
  OdeResidual prev = at_step(h0);
  OdeResidual best{prev.residual, prev.scale, kInf};
  double h = h0, last_change = kInf;
  for (int j = 0; j < kMaxHalvings; ++j) {
    h *= 0.5;
    OdeResidual cur = at_step(h);
    const double change = std::abs(cur.residual - prev.residual);
    const double floor = cur.noise + std::max(change, j == 0 ? change : last_change);
    if (floor < best.noise) best = {cur.residual, cur.scale, floor};
    if (change < cur.noise && last_change < cur.noise) break;
    last_change = change;
    prev = cur;
  }
  return best;
}

DensityEstimate real_shadow_density(const ComplexMatrix& matrix, double x) {
  if (!matrix.real_symmetric()) throw DomainError("real shadow needs a real symmetric matrix");
  auto ev = eigenvalues_hermitian(matrix);
  const std::size_t n = ev.size();
  const PushforwardDist dist =
      collapse_knots(PushforwardDist(Spectrum(std::move(ev)), DirichletParams::uniform(n, 0.5)));
  const Spectrum& s = dist.spectrum();
  const auto k = dist.params().k();
  if (s.size() == 1) return {x == s.front() ? kInf : 0.0, true};
  if (x < s.front() || x > s.back()) return {0.0, true};
  if (s.size() == 2) return {density_n2(dist, x), true};
  if (std::all_of(k.begin(), k.end(), [](double v) { return v == 0.5; })) {
    RealDensityOptions opts;
    opts.warn_near_knot = false;
    return {real_density(s, x, opts), true};
  }
  if (std::all_of(k.begin(), k.end(), [](double v) { return v == std::round(v); })) {
    return {SplineDensity(dist).density(x), true};
  }
  // Mixed repetition: histogram estimate from exact Dirichlet draws.
  constexpr std::size_t kSamples = 200000;
  const double width = 0.01 * s.span();
  Rng rng(0x5eedf00dULL);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < kSamples; ++i) {
    const auto t = sample_simplex(dist.params(), rng);
    double v = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) v += t[j] * s[j];
    if (std::abs(v - x) <= 0.5 * width) ++hits;
  }
  return {static_cast<double>(hits) / (kSamples * width), false};
}

}  // namespace shadowlab
