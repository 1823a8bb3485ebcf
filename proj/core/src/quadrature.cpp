#include "shadowlab/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <limits>
#include <numbers>
#include <queue>

#include "shadowlab/error.hpp"

namespace shadowlab {

double gauss_chebyshev(const RealFunction& h, double a, double b, unsigned n) {
  if (n == 0) throw DomainError("gauss_chebyshev needs at least one node");
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (unsigned j = 0; j < n; ++j) {
    s += h(mid + half * std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * n)));
  }
  return s / n;
}

namespace {

constexpr int kGradedLevels = 12;
constexpr unsigned kPanelNodes = 16;

GaussRule build_gauss_legendre(unsigned n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (unsigned i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (unsigned k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(unsigned n) {
  if (n == 0) throw DomainError("Gauss-Legendre rule needs at least one node");
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_gauss_legendre(n));
  return *slot;
}

double integrate_gauss_legendre(const RealFunction& f, double a, double b, unsigned n) {
  const GaussRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (unsigned i = 0; i < n; ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

double integrate_adaptive(const RealFunction& f, double a, double b, double tol,
                          double* error_estimate) {
  if (a == b) {
    if (error_estimate) *error_estimate = 0.0;
    return 0.0;
  }
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 61>;
  struct Piece {
    double lo, hi, value, error, l1;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  // Each piece is mapped onto [-1, 1] and rescaled here: some Boost releases
  // report the single-panel error without the interval's Jacobian.
  auto eval = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    Piece p{lo, hi, 0.0, 0.0, 0.0};
    p.value = half * Kronrod::integrate([&](double t) { return f(mid + half * t); }, -1.0, 1.0, 0,
                                        0.0, &p.error, &p.l1);
    p.error *= half;
    p.l1 *= half;
    return p;
  };
  // Bisect the worst piece until the summed error estimate meets the relative
  // tolerance or falls to the rounding floor of the integrand's L1 norm.
  std::priority_queue<Piece> queue;
  queue.push(eval(a, b));
  double value = queue.top().value, error = queue.top().error, l1 = queue.top().l1;
  constexpr int kMaxPieces = 2000;
  for (int pieces = 1; pieces < kMaxPieces; ++pieces) {
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * l1;
    if (error <= std::max(tol * std::abs(value), floor)) break;
    const Piece worst = queue.top();
    if (worst.error <= floor / kMaxPieces) break;
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Piece left = eval(worst.lo, mid), right = eval(mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  value = error = 0.0;
  for (; !queue.empty(); queue.pop()) {
    value += queue.top().value;
    error += queue.top().error;
  }
  if (error_estimate) *error_estimate = error;
  return value;
}

double integrate_tanh_sinh(const RealFunction& f, double a, double b, double tol,
                           double* error_estimate) {
  if (a == b) {
    if (error_estimate) *error_estimate = 0.0;
    return 0.0;
  }
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
  double err = 0.0;
  double v = 0.0;
  try {
    v = integrator.integrate(f, a, b, tol, &err);
  } catch (const boost::math::evaluation_error&) {
    // Raised when an abscissa rounds onto a singular endpoint; Gauss-Kronrod
    // nodes stay clear of the ends.
    v = integrate_adaptive(f, a, b, tol, &err);
  } catch (const std::domain_error&) {
    // Raised when the integrand is not finite at an interior abscissa; fall
    // back to the Gauss-Kronrod estimate.
    v = integrate_adaptive(f, a, b, tol, &err);
  }
  if (error_estimate) *error_estimate = err;
  return v;
}

NumericCdf::NumericCdf(RealFunction density, std::span<const double> breakpoints,
                       unsigned panels_per_interval)
    : density_(std::move(density)) {
  if (breakpoints.size() < 2) throw DomainError("NumericCdf needs at least two breakpoints");
  if (panels_per_interval < 2) panels_per_interval = 2;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double lo = breakpoints[i], hi = breakpoints[i + 1];
    if (!(hi > lo)) throw DomainError("NumericCdf breakpoints must be strictly ascending");
    // Cosine spacing clusters panels quadratically toward both knots; the
    // end panels are then split geometrically so only a sliver next to the
    // knot needs a singularity-aware rule.
    for (unsigned p = 0; p < panels_per_interval; ++p) {
      const double a = lo + (hi - lo) * 0.5 * (1.0 - std::cos(std::numbers::pi * p / panels_per_interval));
      const double b = p + 1 == panels_per_interval
                           ? hi
                           : lo + (hi - lo) * 0.5 * (1.0 - std::cos(std::numbers::pi * (p + 1) / panels_per_interval));
      const double w = b - (p == 0 ? lo : a);
      if (p == 0) {
        edges_.push_back(lo);
        kind_.push_back(Panel::Singular);
        for (int j = kGradedLevels; j >= 1; --j) {
          edges_.push_back(lo + std::ldexp(w, -j));
          kind_.push_back(Panel::Graded);
        }
      } else if (p + 1 == panels_per_interval) {
        for (int j = 0; j < kGradedLevels; ++j) {
          edges_.push_back(j == 0 ? a : hi - std::ldexp(w, -j));
          kind_.push_back(Panel::Graded);
        }
        edges_.push_back(hi - std::ldexp(w, -kGradedLevels));
        kind_.push_back(Panel::Singular);
      } else {
        edges_.push_back(a);
        kind_.push_back(Panel::Smooth);
      }
    }
  }
  edges_.push_back(breakpoints.back());
  cumulative_.assign(edges_.size(), 0.0);
  legendre_.resize(kind_.size());
  const GaussRule& rule = gauss_legendre(kPanelNodes);
  for (std::size_t p = 0; p + 1 < edges_.size(); ++p) {
    const double lo = edges_[p], hi = edges_[p + 1];
    if (kind_[p] == Panel::Singular) {
      cumulative_[p + 1] = cumulative_[p] + singular_integral(lo, hi);
      continue;
    }
    // c_n = (2n + 1)/2 sum_i w_i f(t_i) P_n(t_i), exact for the interpolant.
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    auto& c = legendre_[p];
    c.assign(kPanelNodes, 0.0);
    for (unsigned i = 0; i < kPanelNodes; ++i) {
      const double t = rule.nodes[i];
      const double wf = rule.weights[i] * density_(mid + half * t);
      double p0 = 1.0, p1 = t;
      c[0] += wf;
      if (kPanelNodes > 1) c[1] += wf * t;
      for (unsigned n = 2; n < kPanelNodes; ++n) {
        const double p2 = ((2.0 * n - 1.0) * t * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = p2;
        c[n] += wf * p2;
      }
    }
    for (unsigned n = 0; n < kPanelNodes; ++n) c[n] *= 0.5 * (2.0 * n + 1.0) * half;
    // The full panel integral is 2 c_0 in these units.
    cumulative_[p + 1] = cumulative_[p] + 2.0 * c[0];
  }
}

double NumericCdf::singular_integral(double lo, double hi) const {
  // Abscissas that round onto the knot itself can hit an infinite density;
  // they carry no mass.
  return integrate_tanh_sinh(
      [this](double t) {
        const double v = density_(t);
        return std::isfinite(v) ? v : 0.0;
      },
      lo, hi, 1e-12);
}

double NumericCdf::operator()(double x) const {
  if (!(x > edges_.front())) return 0.0;
  if (x >= edges_.back()) return cumulative_.back();
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  const std::size_t p = static_cast<std::size_t>(it - edges_.begin()) - 1;
  if (x == edges_[p]) return cumulative_[p];
  if (kind_[p] == Panel::Singular) return cumulative_[p] + singular_integral(edges_[p], x);
  // int_{-1}^{s} P_0 = s + 1 and int_{-1}^{s} P_n = (P_{n+1}(s) - P_{n-1}(s)) / (2n + 1).
  const auto& c = legendre_[p];
  const double s = std::clamp(2.0 * (x - edges_[p]) / (edges_[p + 1] - edges_[p]) - 1.0, -1.0, 1.0);
  double prev = 1.0, cur = s, sum = c[0] * (s + 1.0);
  for (unsigned n = 1; n < kPanelNodes; ++n) {
    const double next = ((2.0 * n + 1.0) * s * cur - n * prev) / (n + 1.0);
    sum += c[n] * (next - prev) / (2.0 * n + 1.0);
    prev = cur;
    cur = next;
  }
  return cumulative_[p] + sum;
}

}  // namespace shadowlab
