#include "shadowlab/shadow.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <optional>

#include "shadowlab/entangled.hpp"
#include "shadowlab/error.hpp"
#include "shadowlab/quaternion.hpp"
#include "shadowlab/spline.hpp"

namespace shadowlab {

std::string route_name(Route route) {
  switch (route) {
    case Route::PointMass: return "point-mass";
    case Route::Beta: return "beta";
    case Route::Spline: return "spline";
    case Route::RealDistinct: return "real-distinct";
    case Route::Unavailable: return "monte-carlo";
  }
  return "unknown";
}

struct PushforwardLaw::Impl {
  std::optional<SplineDensity> spline;
  std::optional<NumericCdf> numeric;
  std::vector<double> sample;  // sorted Dirichlet draws for the fallback
  double bin_width = 0.0;
};

namespace {

constexpr std::size_t kFallbackSamples = 200000;
constexpr std::uint64_t kFallbackSeed = 0x5eedf00dULL;

bool all_integer(std::span<const double> k) {
  return std::all_of(k.begin(), k.end(), [](double v) { return v == std::round(v); });
}

bool all_half(std::span<const double> k) {
  return std::all_of(k.begin(), k.end(), [](double v) { return v == 0.5; });
}

}  // namespace

PushforwardLaw::PushforwardLaw(const PushforwardDist& dist, RealDensityOptions opts)
    : dist_(collapse_knots(dist)), route_(Route::Unavailable) {
  opts.warn_near_knot = false;
  const auto k = dist_.params().k();
  const Spectrum& s = dist_.spectrum();
  auto impl = std::make_shared<Impl>();
  if (s.size() == 1) {
    route_ = Route::PointMass;
  } else if (s.size() == 2) {
    route_ = Route::Beta;
  } else if (all_integer(k)) {
    route_ = Route::Spline;
    impl->spline.emplace(dist_);
  } else if (all_half(k)) {
    route_ = Route::RealDistinct;
    const Spectrum spectrum = s;
    impl->numeric.emplace([spectrum, opts](double x) { return real_density(spectrum, x, opts); },
                          s.values());
  } else {
    route_ = Route::Unavailable;
    Rng rng(kFallbackSeed);
    impl->sample.resize(kFallbackSamples);
    for (auto& v : impl->sample) {
      const auto t = sample_simplex(dist_.params(), rng);
      v = 0.0;
      for (std::size_t j = 0; j < t.size(); ++j) v += t[j] * s[j];
    }
    std::sort(impl->sample.begin(), impl->sample.end());
    impl->bin_width = 0.01 * s.span();
  }
  opts_ = opts;
  impl_ = std::move(impl);
}

double PushforwardLaw::density(double x) const {
  const Spectrum& s = dist_.spectrum();
  switch (route_) {
    case Route::PointMass: return x == s.front() ? std::numeric_limits<double>::infinity() : 0.0;
    case Route::Beta:
      if (x < s.front() || x > s.back()) return 0.0;
      return density_n2(dist_, x);
    case Route::Spline: return impl_->spline->density(x);
    case Route::RealDistinct:
      if (x < s.front() || x > s.back()) return 0.0;
      return real_density(s, x, opts_);
    case Route::Unavailable: {
      const auto& v = impl_->sample;
      const double h = 0.5 * impl_->bin_width;
      const auto lo = std::lower_bound(v.begin(), v.end(), x - h);
      const auto hi = std::upper_bound(v.begin(), v.end(), x + h);
      return static_cast<double>(hi - lo) / (static_cast<double>(v.size()) * impl_->bin_width);
    }
  }
  return 0.0;
}

double PushforwardLaw::cdf(double x) const {
  const Spectrum& s = dist_.spectrum();
  if (x < s.front()) return 0.0;
  if (x >= s.back()) return 1.0;
  switch (route_) {
    case Route::PointMass: return 1.0;
    case Route::Beta: {
      const double u = (x - s.front()) / s.span();
      return boost::math::ibeta(dist_.params()[1], dist_.params()[0], u);
    }
    case Route::Spline: return impl_->spline->cdf(x);
    case Route::RealDistinct: return std::clamp((*impl_->numeric)(x), 0.0, 1.0);
    case Route::Unavailable: {
      const auto& v = impl_->sample;
      return static_cast<double>(std::upper_bound(v.begin(), v.end(), x) - v.begin()) /
             static_cast<double>(v.size());
    }
  }
  return 0.0;
}

RealDensityOptions law_density_options() {
  RealDensityOptions o;
  o.adaptive = true;
  o.tol = 1e-12;
  o.warn_near_knot = false;
  return o;
}

namespace {

// Symmetric real matrix whose real-vector quadratic form is the requested
// marginal of u^T B u.
ComplexMatrix real_form(const ComplexMatrix& b, Part part) {
  const ComplexMatrix m = part == Part::Real ? b.real_part() : b.imag_part();
  return cplx(0.5) * (m + m.transpose());
}

// Hermitian matrix whose complex quadratic form is the requested marginal.
ComplexMatrix hermitian_form(const ComplexMatrix& b, Part part) {
  return part == Part::Real ? b.hermitian_part() : b.antihermitian_part();
}

PushforwardLaw law_from(const ComplexMatrix& h, double k, RealDensityOptions opts) {
  auto ev = eigenvalues_hermitian(h);
  const std::size_t n = ev.size();
  return PushforwardLaw(PushforwardDist(Spectrum(std::move(ev)), DirichletParams::uniform(n, k)),
                        opts);
}

}  // namespace

ShadowLaw ShadowLaw::of(const ComplexMatrix& matrix, const EnsembleSpec& ensemble, Part part,
                        RealDensityOptions opts) {
  if (!matrix.square()) throw DimensionError("shadow needs a square matrix");
  ShadowLaw law;
  switch (ensemble.kind) {
    case EnsembleKind::ComplexPure:
      law.components_.push_back({1.0, law_from(hermitian_form(matrix, part), 1.0, opts)});
      break;
    case EnsembleKind::InducedMixed:
      if (ensemble.K == 0) throw DomainError("mixed ensemble needs K >= 1");
      law.components_.push_back(
          {1.0, law_from(hermitian_form(matrix, part), static_cast<double>(ensemble.K), opts)});
      break;
    case EnsembleKind::RealPure:
      law.components_.push_back({1.0, law_from(real_form(matrix, part), 0.5, opts)});
      break;
    case EnsembleKind::QuaternionPure: {
      auto ev = quaternion_eigenvalues(hermitian_form(matrix, part));
      const std::size_t n = ev.size();
      law.components_.push_back(
          {1.0, PushforwardLaw(PushforwardDist(Spectrum(std::move(ev)), DirichletParams::uniform(n, 2.0)),
                               opts)});
      break;
    }
    case EnsembleKind::MaxEntangledComplex:
      law.components_.push_back(
          {1.0, law_from(real_form(complex_entangled_transform(matrix), part), 0.5, opts)});
      break;
    case EnsembleKind::MaxEntangledReal: {
      const auto [b1, b2] = real_entangled_components(matrix);
      law.components_.push_back({0.5, law_from(real_form(b1, part), 0.5, opts)});
      law.components_.push_back({0.5, law_from(real_form(b2, part), 0.5, opts)});
      break;
    }
  }
  return law;
}

double ShadowLaw::density(double x) const {
  double s = 0.0;
  for (const auto& c : components_) s += c.weight * c.law.density(x);
  return s;
}

double ShadowLaw::cdf(double x) const {
  double s = 0.0;
  for (const auto& c : components_) s += c.weight * c.law.cdf(x);
  return s;
}

bool ShadowLaw::analytic() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Component& c) { return c.law.analytic(); });
}

double ShadowLaw::mean() const {
  double m = 0.0;
  for (const auto& c : components_) m += c.weight * c.law.moments().mean;
  return m;
}

double ShadowLaw::variance() const {
  // Law of total variance over the mixture.
  const double m = mean();
  double v = 0.0;
  for (const auto& c : components_) {
    const auto mv = c.law.moments();
    v += c.weight * (mv.variance + (mv.mean - m) * (mv.mean - m));
  }
  return v;
}

double ShadowLaw::lower() const {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& c : components_) v = std::min(v, c.law.distribution().spectrum().front());
  return v;
}

double ShadowLaw::upper() const {
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& c : components_) v = std::max(v, c.law.distribution().spectrum().back());
  return v;
}

std::vector<double> ShadowLaw::knots() const {
  std::vector<double> k;
  for (const auto& c : components_) {
    const auto v = c.law.distribution().spectrum().values();
    k.insert(k.end(), v.begin(), v.end());
  }
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

}  // namespace shadowlab
