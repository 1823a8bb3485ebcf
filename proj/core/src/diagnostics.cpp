#include <algorithm>
#include <cmath>
#include <limits>

#include "shadowlab/error.hpp"
#include "shadowlab/realshadow.hpp"

namespace shadowlab {

namespace {

constexpr std::size_t kPolyTerms = 7;
constexpr std::size_t kSingularTerms = 5;
constexpr std::size_t kFitPoints = 90;

struct SideFit {
  std::vector<double> poly;      // coefficients of u^n, u = t / R
  std::vector<double> singular;  // coefficients of the singular series
  double fmax = 0.0;
};

// Least-squares fit of f(a + dir * R * u) on u in [1e-4, 1].
SideFit fit_side(const Spectrum& spectrum, double a, double dir, double R, bool even) {
  const std::size_t n = spectrum.size();
  const double e = even ? 0.5 * (n - 3.0) : 0.5 * (n - 1.0) - 1.0;
  const std::size_t cols = kPolyTerms + kSingularTerms;
  std::vector<double> A(kFitPoints * cols), b(kFitPoints);
  RealDensityOptions opts;
  opts.adaptive = true;
  opts.warn_near_knot = false;
  SideFit fit;
  for (std::size_t i = 0; i < kFitPoints; ++i) {
    const double u = std::pow(10.0, -4.0 * (1.0 - static_cast<double>(i) / (kFitPoints - 1)));
    const double x = std::clamp(a + dir * R * u, spectrum.front(), spectrum.back());
    b[i] = real_density(spectrum, x, opts);
    fit.fmax = std::max(fit.fmax, std::abs(b[i]));
    double* row = &A[i * cols];
    for (std::size_t c = 0; c < kPolyTerms; ++c) row[c] = std::pow(u, static_cast<double>(c));
    for (std::size_t c = 0; c < kSingularTerms; ++c) {
      const double pw = std::pow(u, e + static_cast<double>(c));
      row[kPolyTerms + c] = even ? pw : pw * std::log(u);
    }
  }
  const auto coef = detail::least_squares(std::move(A), kFitPoints, cols, std::move(b));
  fit.poly.assign(coef.begin(), coef.begin() + kPolyTerms);
  fit.singular.assign(coef.begin() + kPolyTerms, coef.end());
  return fit;
}

double factorial(std::size_t j) { return std::tgamma(static_cast<double>(j) + 1.0); }

}  // namespace

ContinuityReport knot_continuity_report(const Spectrum& spectrum, double threshold) {
  const std::size_t n = spectrum.size();
  if (n < 4) throw DomainError("knot_continuity_report needs at least four knots");
  if (!(spectrum.min_gap() > 0.0)) throw DomainError("knot_continuity_report needs distinct knots");
  const bool even = n % 2 == 0;
  // Lowest derivative order the singular series can break.
  const std::size_t singular_order = even ? (n - 2) / 2 : (n - 1) / 2 - 1;
  ContinuityReport report;
  report.orders_checked = n / 2 - 1;
  report.threshold = threshold;

  for (std::size_t m = 0; m < n; ++m) {
    const double a = spectrum[m];
    const double gap_left = m > 0 ? a - spectrum[m - 1] : std::numeric_limits<double>::infinity();
    const double gap_right = m + 1 < n ? spectrum[m + 1] - a : std::numeric_limits<double>::infinity();
    const double R = 0.5 * std::min(gap_left, gap_right);

    SideFit left, right;
    const SideFit zero{std::vector<double>(kPolyTerms, 0.0), std::vector<double>(kSingularTerms, 0.0), 0.0};
    left = m > 0 ? fit_side(spectrum, a, -1.0, R, even) : zero;
    right = m + 1 < n ? fit_side(spectrum, a, 1.0, R, even) : zero;
    const double fmax = std::max(left.fmax, right.fmax);

    KnotContinuity kc{m, a, {}, -1};
    for (std::size_t j = 0; j <= report.orders_checked; ++j) {
      // Derivatives with respect to x; the left fit runs in t = a - x.
      const double dr = factorial(j) * right.poly[j] / std::pow(R, static_cast<double>(j));
      const double dl = (j % 2 ? -1.0 : 1.0) * factorial(j) * left.poly[j] /
                        std::pow(R, static_cast<double>(j));
      const double scale = std::max({std::abs(dl), std::abs(dr),
                                     fmax / std::pow(R, static_cast<double>(j))});
      double mismatch = std::abs(dr - dl) / scale;
      if (j >= singular_order) {
        const double lead = std::max(std::abs(left.singular[0]), std::abs(right.singular[0]));
        if (lead > threshold * fmax) mismatch = std::numeric_limits<double>::infinity();
      }
      kc.mismatch.push_back(mismatch);
      if (kc.first_jump < 0 && mismatch > threshold) kc.first_jump = static_cast<int>(j);
    }
    report.knots.push_back(std::move(kc));
  }
  return report;
}

}  // namespace shadowlab
