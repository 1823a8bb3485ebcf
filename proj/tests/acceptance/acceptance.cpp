// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "shadowlab/cli/cli.hpp"
#include "shadowlab/dirichlet.hpp"
#include "shadowlab/entangled.hpp"
#include "shadowlab/quaternion.hpp"
#include "shadowlab/realshadow.hpp"
#include "shadowlab/shadow.hpp"
#include "shadowlab/special.hpp"
#include "shadowlab/spline.hpp"
#include "shadowlab/states.hpp"
#include "test_support.hpp"

namespace {

using namespace shadowlab;
using shadowlab::testing::integrate_over_knots;
using shadowlab::testing::random_spectrum;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

RealDensityOptions adaptive() { return ShadowLaw::adaptive_options(); }

RealDensityOptions fixed(unsigned n) {
  RealDensityOptions o;
  o.quad_order = n;
  o.warn_near_knot = false;
  return o;
}

double distance_to_knots(const Spectrum& s, double x) {
  double d = s.span();
  for (double a : s.values()) d = std::min(d, std::abs(x - a));
  return d;
}

double generic_point(const Spectrum& s, Rng& rng, double margin) {
  for (;;) {
    const double x = s.front() + s.span() * rng.uniform();
    if (distance_to_knots(s, x) >= margin * s.span()) return x;
  }
}

Outcome degenerate_pair() {
  const auto a = ComplexMatrix::diagonal({1.0, 1.0, 3.0, 3.0});
  double worst = 0.0;
  bool analytic = true;
  for (int i = 0; i < 500; ++i) {
    const auto d = real_shadow_density(a, 1.01 + 1.98 * i / 499.0);
    analytic = analytic && d.analytic;
    worst = std::max(worst, std::abs(d.value - 0.5));
  }
  return {analytic && worst < 1e-6, "max |f - 1/2| = " + fmt("%.3g", worst)};
}

Outcome arcsine() {
  const auto a = ComplexMatrix::diagonal({1.0, 3.0});
  const double err = std::abs(real_shadow_density(a, 2.0).value - 1.0 / std::numbers::pi);
  const auto law = ShadowLaw::of(a, EnsembleSpec::parse("real"));
  const auto mc = collect_shadow(a, EnsembleSpec::parse("real"), 100000, 2);
  const double ks = ks_distance(mc, [&](double x) { return law.cdf(x); });
  return {err < 1e-10 && ks < 0.01, "|f(2) - 1/pi| = " + fmt("%.3g", err) + ", KS = " + fmt("%.4f", ks)};
}

Outcome normalization_and_moments() {
  Rng rng(3);
  double worst_mass = 0.0, worst_mean = 0.0, worst_var = 0.0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 3 + t % 5;
    const Spectrum s = random_spectrum(rng, n, -2.0, 3.0, 0.02);
    const RealFunction f = [&](double x) { return real_density(s, x, adaptive()); };
    const double mass = integrate_over_knots(f, s);
    const double mean = integrate_over_knots(f, s, [](double x) { return x; });
    double mu = 0.0;
    for (double a : s.values()) mu += a / static_cast<double>(n);
    const double var = integrate_over_knots(f, s, [&](double x) { return (x - mu) * (x - mu); });
    double ss = 0.0;
    for (double a : s.values()) ss += (a - mu) * (a - mu);
    const double var_expected = 2.0 * ss / (n * (n + 2.0));
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
    worst_mean = std::max(worst_mean, std::abs(mean - mu));
    worst_var = std::max(worst_var, std::abs(var / var_expected - 1.0));
  }
  return {worst_mass < 1e-4 && worst_mean < 1e-6 && worst_var < 1e-4,
          "mass " + fmt("%.2g", worst_mass) + ", mean " + fmt("%.2g", worst_mean) + ", variance rel " +
              fmt("%.2g", worst_var)};
}

Outcome four_knot_plateau() {
  Rng rng(4);
  double spread = 0.0, err = 0.0;
  for (int t = 0; t < 5; ++t) {
    const Spectrum s = random_spectrum(rng, 4, -2.0, 3.0, 0.02);
    const double e = elliptic_E(s[0], s[1], s[2], s[3]);
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i < 20; ++i) {
      const double x = s[1] + (s[2] - s[1]) * (i + 0.5) / 20.0;
      const double f = real_density(s, x, adaptive());
      lo = std::min(lo, f);
      hi = std::max(hi, f);
      err = std::max(err, std::abs(f - e));
    }
    spread = std::max(spread, hi - lo);
  }
  return {spread < 1e-8 && err < 1e-8, "spread " + fmt("%.2g", spread) + ", |f - E| " + fmt("%.2g", err)};
}

Outcome five_knot_identity() {
  Rng rng(5);
  double err = 0.0, change = 0.0;
  for (int t = 0; t < 5; ++t) {
    const Spectrum base = random_spectrum(rng, 5, -2.0, 3.0, 0.05);
    const double e = 1.5 * elliptic_E(base[0], base[1], base[3], base[4]);
    std::vector<double> values;
    for (double frac : {0.25, 0.5, 0.8}) {
      auto a = base.values();
      std::vector<double> v(a.begin(), a.end());
      v[2] = v[1] + frac * (v[3] - v[1]);
      const Spectrum s(v);
      values.push_back(real_density(s, v[2], adaptive()));
      err = std::max(err, std::abs(values.back() - e));
    }
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    change = std::max(change, *mx - *mn);
  }
  return {err < 1e-8 && change < 1e-8, "|f(a3) - 3E/2| " + fmt("%.2g", err) + ", a3 dependence " +
                                           fmt("%.2g", change)};
}

Outcome three_knot_dual_path() {
  Rng rng(6);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Spectrum s = random_spectrum(rng, 3, -2.0, 3.0, 0.05);
    const double x = generic_point(s, rng, 1e-3);
    const double closed = real_density_n3(s, x);
    worst = std::max(worst, std::abs(real_density(s, x, adaptive()) - closed) / closed);
  }
  return {worst < 1e-8, "max relative difference " + fmt("%.2g", worst)};
}

Outcome mgf_identity() {
  Rng rng(7);
  double worst = 0.0;
  auto check = [&](const PushforwardDist& dist, const RealFunction& f) {
    const Spectrum& s = dist.spectrum();
    const double kt = dist.params().k_tilde();
    const double amax = std::max(std::abs(s.front()), std::abs(s.back()));
    for (int j = 0; j < 10; ++j) {
      const double r = (-0.8 + 1.6 * j / 9.0) / amax;
      double product = 1.0;
      for (std::size_t i = 0; i < s.size(); ++i) product *= std::pow(1.0 - r * s[i], -dist.params()[i]);
      const double integral = integrate_over_knots(f, s, [&](double x) { return std::pow(1.0 - r * x, -kt); });
      worst = std::max(worst, std::abs(integral / product - 1.0));
    }
  };
  for (int t = 0; t < 4; ++t) {
    const std::size_t n = 2 + t % 4;
    const Spectrum s = random_spectrum(rng, n, -1.0, 2.0, 0.05);
    std::vector<unsigned> k(n);
    for (auto& v : k) v = 1 + static_cast<unsigned>(3.0 * rng.uniform());
    const PushforwardDist dist(s, DirichletParams(std::vector<double>(k.begin(), k.end())));
    const SplineDensity spline(dist);
    check(dist, [&](double x) { return spline.density(x); });
  }
  for (std::size_t n : {3u, 4u, 5u}) {
    const Spectrum s = random_spectrum(rng, n, -1.0, 2.0, 0.05);
    check(PushforwardDist(s, DirichletParams::uniform(n, 0.5)),
          [&](double x) { return real_density(s, x, adaptive()); });
  }
  return {worst < 1e-6, "max relative error " + fmt("%.2g", worst)};
}

Outcome ode_residual_check() {
  Rng rng(8);
  struct Case {
    std::size_t n;
    double k;
  };
  int failures = 0;
  double worst = 0.0;
  for (const Case c : {Case{3, 1.0}, Case{4, 0.5}, Case{4, 1.0}, Case{5, 0.5}}) {
    const Spectrum s = random_spectrum(rng, c.n, -1.0, 3.0, 0.1);
    RealFunction f;
    if (c.k == 0.5) {
      f = [&](double x) { return real_density(s, x, adaptive()); };
    } else {
      const std::vector<unsigned> w(c.n, 1);
      f = [s, w](double x) { return spline_density(s, w, x); };
    }
    for (int i = 0; i < 20; ++i) {
      const auto r = ode_residual(s, c.k, f, generic_point(s, rng, 0.02));
      if (!(std::abs(r.residual) <= r.noise)) ++failures;
      worst = std::max(worst, std::abs(r.residual) / r.noise);
    }
  }
  return {failures == 0, std::to_string(failures) + " of 80 above floor, max |T f| / floor " +
                             fmt("%.3g", worst)};
}

Outcome quadrature_robustness() {
  Rng rng(9);
  double worst = 0.0;
  int points = 0;
  for (int t = 0; t < 10; ++t) {
    const Spectrum s = random_spectrum(rng, 3 + t % 6, 0.0, 1.0, 0.1);
    for (int i = 0; i < 20; ++i) {
      const double x = generic_point(s, rng, 0.05);
      const double f20 = real_density(s, x, fixed(20));
      const double f200 = real_density(s, x, fixed(200));
      worst = std::max(worst, std::abs(f20 - f200) / std::abs(f200));
      ++points;
    }
  }
  return {worst < 1e-8, std::to_string(points) + " points, max relative difference " + fmt("%.2g", worst)};
}

Outcome top_knot_exponent() {
  Rng rng(10);
  double worst = 0.0;
  std::string detail;
  for (int t = 0; t < 3; ++t) {
    const std::size_t n = 3 + t;
    const Spectrum s = random_spectrum(rng, n, 0.0, 2.0, 0.1);
    std::vector<double> k(n);
    for (auto& v : k) v = 0.3 + 2.5 * rng.uniform();
    const PushforwardDist dist(s, DirichletParams(k));
    const double gap = s[n - 1] - s[n - 2];
    // Least-squares slope of log(1 - F) against log(a_N - x).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const int m = 8;
    for (int i = 0; i < m; ++i) {
      const double d = gap * std::pow(10.0, -5.0 + 1.5 * i / (m - 1.0));
      const double lx = std::log(d), ly = std::log(survival_series(dist, s.back() - d));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double expected = dist.params().k_tilde() - k.back();
    worst = std::max(worst, std::abs(slope - expected));
    detail += (t ? ", " : "") + fmt("%.4f", slope) + " vs " + fmt("%.4f", expected);
  }
  return {worst < 0.05, detail};
}

// Magnitude of the one-sided slope at distances 1e-2, 1e-3, 1e-4 (relative to
// the span) from knot m.
std::vector<double> slopes_near(const Spectrum& s, std::size_t m, double dir) {
  std::vector<double> out;
  for (double d : {1e-2, 1e-3, 1e-4}) {
    const double x = s[m] + dir * d * s.span();
    const double h = 0.05 * d * s.span();
    out.push_back(std::abs(real_density(s, x + h, adaptive()) - real_density(s, x - h, adaptive())) / (2 * h));
  }
  return out;
}

Outcome knot_continuity() {
  Rng rng(11);
  bool ok = true;
  std::string detail;
  for (std::size_t n : {4u, 6u}) {
    const Spectrum s = random_spectrum(rng, n, 0.0, 4.0, 0.08);
    const auto rep = knot_continuity_report(s);
    double worst = 0.0;
    for (const auto& kc : rep.knots) {
      for (std::size_t j = 0; j + 2 <= n / 2; ++j) worst = std::max(worst, kc.mismatch[j]);
      ok = ok && kc.first_jump == static_cast<int>(n / 2 - 1);
    }
    ok = ok && worst < 1e-3;
    detail += "N=" + std::to_string(n) + " max mismatch " + fmt("%.2g", worst) + "; ";
  }
  const Spectrum s5 = random_spectrum(rng, 5, 0.0, 4.0, 0.08);
  const auto rep5 = knot_continuity_report(s5);
  double worst0 = 0.0;
  for (const auto& kc : rep5.knots) worst0 = std::max(worst0, kc.mismatch[0]);
  ok = ok && worst0 < 1e-3;
  double ratio_dev = 0.0;
  for (std::size_t m : {1u, 3u}) {
    for (double dir : {-1.0, 1.0}) {
      const auto sl = slopes_near(s5, m, dir);
      const double inc1 = sl[1] - sl[0], inc2 = sl[2] - sl[1];
      ok = ok && inc1 > 0.0 && inc2 > 0.0;
      ratio_dev = std::max(ratio_dev, std::abs(inc2 / inc1 - 1.0));
    }
  }
  ok = ok && ratio_dev < 0.25;
  detail += "N=5 value mismatch " + fmt("%.2g", worst0) + ", log-growth increment ratio deviation " +
            fmt("%.3f", ratio_dev);
  return {ok, detail};
}

Outcome entangled_reductions() {
  Rng rng(12);
  const std::size_t m = 100000;
  const auto a = shadowlab::testing::random_hermitian(rng, 4);
  const auto ca = collect_shadow(a, EnsembleSpec::parse("entangled-complex"), m, 121);
  const auto la = ShadowLaw::of(complex_entangled_transform(a).real_part(), EnsembleSpec::parse("real"));
  const double ks_a = ks_distance(ca, [&](double x) { return la.cdf(x); });

  const auto b = shadowlab::testing::random_real_symmetric(rng, 4);
  const auto cb = collect_shadow(b, EnsembleSpec::parse("entangled-real"), m, 122);
  const auto [z1, z2] = real_entangled_components(b);
  const auto l1 = ShadowLaw::of(z1, EnsembleSpec::parse("real"));
  const auto l2 = ShadowLaw::of(z2, EnsembleSpec::parse("real"));
  const double ks_b = ks_distance(cb, [&](double x) { return 0.5 * (l1.cdf(x) + l2.cdf(x)); });

  const auto p = shadowlab::testing::random_hermitian(rng, 2);
  const auto q = shadowlab::testing::random_hermitian(rng, 2);
  const auto cc = collect_shadow(direct_sum(p, q), EnsembleSpec::parse("entangled-complex"), m, 123);
  const auto cr = collect_shadow(direct_sum_reduce(p, q), EnsembleSpec::parse("complex"), m, 124);
  const double ks_c = ks_distance(cc.values, cr.values);
  return {ks_a < 0.02 && ks_b < 0.02 && ks_c < 0.02,
          "KS " + fmt("%.4f", ks_a) + " / " + fmt("%.4f", ks_b) + " / " + fmt("%.4f", ks_c)};
}

Outcome quaternion_chain() {
  const ComplexMatrix a{{0.0, 1.0, 0.0, 0.0}, {1.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
  const double r5 = std::sqrt(5.0);
  const std::vector<double> ev_expected{-0.5 - 0.5 * r5, 0.5 - 0.5 * r5, -0.5 + 0.5 * r5, 0.5 + 0.5 * r5};
  const std::vector<double> q_expected{-0.5, -0.5, 0.5, 0.5};
  const auto ev = eigenvalues_hermitian(a);
  const auto qev = eigenvalues_hermitian(quaternionize(a));
  double err = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    err = std::max({err, std::abs(ev[i] - ev_expected[i]), std::abs(qev[i] - q_expected[i])});
  }
  const auto mc = collect_shadow(a, EnsembleSpec::parse("quaternion"), 100000, 13);
  const double ks_beta = ks_distance(mc, [](double x) {
    const double u = std::clamp(x + 0.5, 0.0, 1.0);
    return u * u * (3.0 - 2.0 * u);
  });
  const auto d = ComplexMatrix::diagonal({0.0, 1.0, 2.0});
  const auto r = collect_shadow(kron(d, ComplexMatrix::identity(4)), EnsembleSpec::parse("real"), 100000, 14);
  const auto c = collect_shadow(kron(d, ComplexMatrix::identity(2)), EnsembleSpec::parse("complex"), 100000, 15);
  const auto h = collect_shadow(kron(d, ComplexMatrix::identity(2)), EnsembleSpec::parse("quaternion"), 100000, 16);
  const double chain = std::max({ks_distance(r.values, c.values), ks_distance(c.values, h.values),
                                 ks_distance(r.values, h.values)});
  return {err < 1e-10 && ks_beta < 0.01 && chain < 0.015,
          "spectra " + fmt("%.2g", err) + ", KS Beta(2,2) " + fmt("%.4f", ks_beta) + ", chain KS " +
              fmt("%.4f", chain)};
}

Outcome negative_control() {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string csv = (dir / "shadowlab_negative_control.csv").string();
  cli::RunConfig config;
  config.command = "compare";
  config.matrix = "diag:0,1";
  config.ensemble = "real";
  config.model = "complex";
  config.samples = 100000;
  config.seed = 14;
  config.out = csv;
  std::ostringstream log;
  const int code = cli::cmd_compare(config, log);
  double ks = 0.0;
  std::ifstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("ks_real,", 0) == 0) ks = std::stod(line.substr(8, line.find(',', 8) - 8));
  }
  std::filesystem::remove(csv);
  return {code != 0 && ks > 0.1, "exit " + std::to_string(code) + ", KS " + fmt("%.4f", ks)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"degenerate pair identity", degenerate_pair},
      {"arcsine case", arcsine},
      {"normalization and moments", normalization_and_moments},
      {"four-knot plateau", four_knot_plateau},
      {"five-knot middle identity", five_knot_identity},
      {"three-knot dual path", three_knot_dual_path},
      {"MGF identity", mgf_identity},
      {"ODE residual", ode_residual_check},
      {"quadrature robustness", quadrature_robustness},
      {"top-knot exponent", top_knot_exponent},
      {"knot continuity", knot_continuity},
      {"entangled reductions", entangled_reductions},
      {"quaternion chain", quaternion_chain},
      {"negative control", negative_control},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
