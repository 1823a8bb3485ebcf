#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "shadowlab/cli/cli.hpp"
#include "shadowlab/shadow.hpp"
#include "shadowlab/states.hpp"
#include "svg.hpp"

namespace shadowlab::cli {

namespace {

// Output stream for `path`, or stdout when empty.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot write '" + path + "'");
    }
  }
  std::ostream& operator*() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

RealDensityOptions density_options(const RunConfig& config) {
  if (!config.quad_order) return ShadowLaw::adaptive_options();
  if (*config.quad_order == 0) throw ParseError("--quad-order must be positive");
  RealDensityOptions o;
  o.quad_order = *config.quad_order;
  o.warn_near_knot = false;
  return o;
}

long segment_index(const std::vector<double>& knots, double x) {
  if (knots.empty() || x < knots.front() || x > knots.back()) return -1;
  if (knots.size() == 1) return 0;
  const auto it = std::upper_bound(knots.begin(), knots.end(), x);
  const long i = static_cast<long>(it - knots.begin()) - 1;
  return std::min<long>(i, static_cast<long>(knots.size()) - 2);
}

// Unknown ensemble names are malformed input, not unsupported combinations.
EnsembleSpec parse_ensemble(const std::string& text) {
  try {
    return EnsembleSpec::parse(text);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

struct Check {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

}  // namespace

int cmd_density(const RunConfig& config, std::ostream& log) {
  const ComplexMatrix matrix = parse_matrix(config.matrix);
  const EnsembleSpec ens = parse_ensemble(config.ensemble);
  GridSpec grid;
  if (config.grid) grid = parse_grid(*config.grid);

  const ShadowLaw law = ShadowLaw::of(matrix, ens, Part::Real, density_options(config));
  if (!law.analytic()) {
    log << "shadowlab: no closed-form density for this spectrum under the " << ens.tag()
        << " ensemble; use `sample` for a Monte Carlo estimate\n";
    return kExitUnsupported;
  }
  if (!config.grid) {
    grid.lo = law.lower();
    grid.hi = law.upper();
    if (!(grid.lo < grid.hi)) {
      grid.lo -= 1.0;
      grid.hi += 1.0;
    }
    grid.points = 1001;
  }

  const auto knots = law.knots();
  std::vector<double> xs(grid.points), ys(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) {
    xs[i] = i + 1 == grid.points
                ? grid.hi
                : grid.lo + (grid.hi - grid.lo) * static_cast<double>(i) / (grid.points - 1);
    ys[i] = law.density(xs[i]);
  }

  Sink sink(config.out);
  std::ostream& out = *sink;
  out << "x,density,segment_index\n";
  for (std::size_t i = 0; i < grid.points; ++i) {
    out << format_double(xs[i]) << ',' << format_double(ys[i]) << ',' << segment_index(knots, xs[i])
        << '\n';
  }
  if (!config.svg.empty()) {
    write_svg(config.svg, xs, ys, knots, ens.tag() + " shadow density");
  }
  return kExitOk;
}

int cmd_sample(const RunConfig& config, std::ostream& /*log*/) {
  const ComplexMatrix matrix = parse_matrix(config.matrix);
  const EnsembleSpec ens = parse_ensemble(config.ensemble);
  if (config.samples == 0) throw ParseError("--samples must be positive");
  const auto sample = collect_shadow(matrix, ens, config.samples, resolve_seed(config), config.threads);

  {
    Sink sink(config.out);
    std::ostream& out = *sink;
    const bool complex_values = sample.complex_valued();
    for (const cplx& v : sample.raw) {
      out << format_double(v.real());
      if (complex_values) out << ',' << format_double(v.imag());
      out << '\n';
    }
  }

  if (!config.hist.empty() || !config.svg.empty()) {
    if (config.bins == 0) throw ParseError("--bins must be positive");
    const double lo = sample.values.front(), hi = sample.values.back();
    const double width = hi > lo ? (hi - lo) / config.bins : 1.0;
    std::vector<std::size_t> counts(config.bins, 0);
    for (double v : sample.values) {
      const auto b = std::min<std::size_t>(config.bins - 1, static_cast<std::size_t>((v - lo) / width));
      ++counts[b];
    }
    if (!config.hist.empty()) {
      Sink sink(config.hist);
      std::ostream& out = *sink;
      out << "bin_left,bin_right,count\n";
      for (unsigned b = 0; b < config.bins; ++b) {
        out << format_double(lo + b * width) << ',' << format_double(lo + (b + 1) * width) << ','
            << counts[b] << '\n';
      }
    }
    if (!config.svg.empty()) {
      std::vector<double> xs, ys;
      const double norm = 1.0 / (static_cast<double>(sample.count) * width);
      for (unsigned b = 0; b < config.bins; ++b) {
        xs.push_back(lo + b * width);
        ys.push_back(counts[b] * norm);
        xs.push_back(lo + (b + 1) * width);
        ys.push_back(counts[b] * norm);
      }
      write_svg(config.svg, xs, ys, {}, ens.tag() + " shadow histogram");
    }
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& config, std::ostream& log) {
  const ComplexMatrix matrix = parse_matrix(config.matrix);
  const EnsembleSpec ens = parse_ensemble(config.ensemble);
  const EnsembleSpec model = config.model == "auto" ? ens : parse_ensemble(config.model);
  if (config.samples == 0) throw ParseError("--samples must be positive");
  const RealDensityOptions opts = density_options(config);

  const ShadowLaw law = ShadowLaw::of(matrix, model, Part::Real, opts);
  if (!law.analytic()) {
    log << "shadowlab: no closed-form law to compare against\n";
    return kExitUnsupported;
  }
  const std::uint64_t seed = resolve_seed(config);
  const auto sample = collect_shadow(matrix, ens, config.samples, seed, config.threads);
  const double n = static_cast<double>(sample.count);

  std::vector<Check> checks;
  const double ks = ks_distance(sample, [&](double x) { return law.cdf(x); });
  checks.push_back({"ks_real", ks, config.ks_threshold, ks < config.ks_threshold});

  const double m = sample.mean();
  double m2 = 0.0, m4 = 0.0;
  for (double v : sample.values) {
    const double d = (v - m) * (v - m);
    m2 += d;
    m4 += d * d;
  }
  m2 /= n;
  m4 /= n;
  const double mean_se = std::sqrt(m2 / n);
  const double var_se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
  const double dmean = std::abs(m - law.mean());
  const double dvar = std::abs(sample.variance() - law.variance());
  checks.push_back({"mean_delta", dmean, 5.0 * mean_se, dmean <= 5.0 * mean_se + 1e-12});
  checks.push_back({"variance_delta", dvar, 5.0 * var_se, dvar <= 5.0 * var_se + 1e-12});

  if (sample.complex_valued()) {
    const ShadowLaw imag_law = ShadowLaw::of(matrix, model, Part::Imag, opts);
    if (imag_law.analytic()) {
      const double ks_im = ks_distance(sample.imag, [&](double x) { return imag_law.cdf(x); });
      checks.push_back({"ks_imag", ks_im, config.ks_threshold, ks_im < config.ks_threshold});
    }
  }

  bool all = true;
  log << "compare: ensemble " << ens.tag() << ", model " << model.tag() << ", n = " << sample.count
      << ", seed = " << seed << '\n';
  for (const auto& c : checks) {
    log << "  " << c.name << " = " << format_double(c.value) << " (threshold "
        << format_double(c.threshold) << ") " << (c.pass ? "pass" : "FAIL") << '\n';
    all = all && c.pass;
  }
  log << "  mean: sample " << format_double(m) << ", closed form " << format_double(law.mean()) << '\n'
      << "  variance: sample " << format_double(sample.variance()) << ", closed form "
      << format_double(law.variance()) << '\n'
      << (all ? "PASS" : "FAIL") << '\n';

  if (!config.out.empty()) {
    Sink sink(config.out);
    std::ostream& out = *sink;
    out << "metric,value,threshold,pass\n";
    for (const auto& c : checks) {
      out << c.name << ',' << format_double(c.value) << ',' << format_double(c.threshold) << ','
          << (c.pass ? 1 : 0) << '\n';
    }
  }
  return all ? kExitOk : kExitValidation;
}

}  // namespace shadowlab::cli
