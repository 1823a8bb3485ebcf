#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "shadowlab/error.hpp"
#include "shadowlab/shadow.hpp"
#include "shadowlab/states.hpp"
#include "test_support.hpp"

namespace shadowlab {
namespace {

using namespace std::complex_literals;

PushforwardLaw law_of(std::vector<double> knots, std::vector<double> k) {
  return PushforwardLaw(PushforwardDist(Spectrum(std::move(knots)), DirichletParams(std::move(k))));
}

TEST(PushforwardLaw, Routes) {
  EXPECT_EQ(law_of({1.0}, {0.5}).route(), Route::PointMass);
  EXPECT_EQ(law_of({0.0, 1.0}, {0.5, 2.5}).route(), Route::Beta);
  EXPECT_EQ(law_of({0.0, 1.0, 2.0}, {1.0, 2.0, 1.0}).route(), Route::Spline);
  EXPECT_EQ(law_of({0.0, 1.0, 2.0}, {0.5, 0.5, 0.5}).route(), Route::RealDistinct);
  EXPECT_EQ(law_of({0.0, 1.0, 2.0}, {0.5, 1.0, 0.5}).route(), Route::Unavailable);
  // Repeated knots collapse: two halves make a whole.
  EXPECT_EQ(law_of({0.0, 0.0, 1.0, 1.0, 2.0, 2.0}, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5}).route(), Route::Spline);
  EXPECT_FALSE(law_of({0.0, 1.0, 2.0}, {0.5, 1.0, 0.5}).analytic());
  EXPECT_EQ(route_name(Route::RealDistinct), "real-distinct");
  EXPECT_EQ(route_name(Route::Unavailable), "monte-carlo");
}

TEST(PushforwardLaw, PointMassAndBeta) {
  const auto pm = law_of({1.5}, {1.0});
  EXPECT_EQ(pm.cdf(1.4), 0.0);
  EXPECT_EQ(pm.cdf(1.5), 1.0);
  EXPECT_TRUE(std::isinf(pm.density(1.5)));
  // D(0, 1; 2, 1) is Beta(1, 2) in the weight of the top knot: density 2(1 - x).
  const auto beta = law_of({0.0, 1.0}, {2.0, 1.0});
  EXPECT_NEAR(beta.density(0.25), 1.5, 1e-14);
  EXPECT_NEAR(beta.cdf(0.25), 1.0 - 0.75 * 0.75, 1e-14);
}

// Property: for every analytic route the CDF is the integral of the density.
TEST(PushforwardLawProperty, CdfIntegratesDensity) {
  const std::vector<PushforwardLaw> laws{law_of({0.0, 1.0}, {0.5, 0.5}),
                                         law_of({-1.0, 0.5, 2.0}, {1.0, 2.0, 1.0}),
                                         law_of({-1.0, 0.2, 0.5, 2.0}, {0.5, 0.5, 0.5, 0.5}),
                                         law_of({0.0, 1.0, 1.5, 2.0, 3.0}, {0.5, 0.5, 0.5, 0.5, 0.5})};
  for (const auto& law : laws) {
    const Spectrum& s = law.distribution().spectrum();
    const RealFunction f = [&](double x) { return law.density(x); };
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      const double mid = 0.5 * (s[i] + s[i + 1]);
      EXPECT_NEAR(law.cdf(mid), acc + integrate_tanh_sinh(f, s[i], mid, 1e-11), 1e-7)
          << route_name(law.route()) << " interval " << i;
      acc += integrate_tanh_sinh(f, s[i], s[i + 1], 1e-11);
    }
    EXPECT_NEAR(acc, 1.0, 1e-8) << route_name(law.route()) << " knots " << s.size();
  }
}

TEST(PushforwardLaw, FallbackIsDeterministic) {
  const auto a = law_of({0.0, 1.0, 2.0}, {0.5, 1.0, 0.5});
  const auto b = law_of({0.0, 1.0, 2.0}, {0.5, 1.0, 0.5});
  EXPECT_EQ(a.cdf(0.7), b.cdf(0.7));
  EXPECT_EQ(a.density(1.2), b.density(1.2));
  // The law is symmetric about 1.
  EXPECT_NEAR(a.cdf(1.0), 0.5, 0.01);
}

TEST(ShadowLaw, EnsembleRoutes) {
  const auto d = ComplexMatrix::diagonal({0.0, 1.0, 3.0});
  EXPECT_EQ(ShadowLaw::of(d, EnsembleSpec::parse("complex")).components()[0].law.route(), Route::Spline);
  EXPECT_EQ(ShadowLaw::of(d, EnsembleSpec::parse("real")).components()[0].law.route(), Route::RealDistinct);
  EXPECT_EQ(ShadowLaw::of(d, EnsembleSpec::parse("mixed:2")).components()[0].law.route(), Route::Spline);
  EXPECT_EQ(ShadowLaw::of(ComplexMatrix::identity(4), EnsembleSpec::parse("entangled-real")).components().size(),
            2u);
  EXPECT_THROW(ShadowLaw::of(ComplexMatrix::zero(2, 3), EnsembleSpec::parse("complex")), DimensionError);
  EXPECT_THROW(ShadowLaw::of(d, EnsembleSpec::parse("quaternion")), DimensionError);
}

TEST(ShadowLaw, SupportAndKnots) {
  const auto law = ShadowLaw::of(ComplexMatrix::diagonal({2.0, -1.0, 0.5}), EnsembleSpec::parse("real"));
  EXPECT_EQ(law.lower(), -1.0);
  EXPECT_EQ(law.upper(), 2.0);
  EXPECT_EQ(law.knots(), (std::vector<double>{-1.0, 0.5, 2.0}));
  EXPECT_EQ(law.cdf(-2.0), 0.0);
  EXPECT_EQ(law.cdf(2.0), 1.0);
  EXPECT_EQ(law.density(3.0), 0.0);
}

// The imaginary marginal of a non-Hermitian matrix is the shadow of its
// anti-Hermitian part.
TEST(ShadowLaw, ImaginaryMarginal) {
  const ComplexMatrix a{{0.0, 1.0}, {0.0, 1i}};
  const auto imag = ShadowLaw::of(a, EnsembleSpec::parse("complex"), Part::Imag);
  const auto sample = collect_shadow(a, EnsembleSpec::parse("complex"), 50000, 8);
  EXPECT_LT(ks_distance(sample.imag, [&](double x) { return imag.cdf(x); }), 0.01);
  const auto real = ShadowLaw::of(a, EnsembleSpec::parse("complex"), Part::Real);
  EXPECT_LT(ks_distance(sample.values, [&](double x) { return real.cdf(x); }), 0.01);
}

struct EnsembleCase {
  const char* ensemble;
  std::size_t n;
};

class ShadowLawProperty : public ::testing::TestWithParam<EnsembleCase> {};

// Property: the closed-form law matches sampling in mean, variance and KS.
TEST_P(ShadowLawProperty, MatchesMonteCarlo) {
  const auto [tag, n] = GetParam();
  const auto ens = EnsembleSpec::parse(tag);
  Rng rng(1000 + n);
  const auto a = ens.kind == EnsembleKind::RealPure || ens.kind == EnsembleKind::MaxEntangledReal
                     ? testing::random_real_symmetric(rng, n)
                     : testing::random_hermitian(rng, n);
  const auto law = ShadowLaw::of(a, ens);
  ASSERT_TRUE(law.analytic());
  const std::size_t m = 50000;
  const auto sample = collect_shadow(a, ens, m, 99);
  EXPECT_LT(ks_distance(sample, [&](double x) { return law.cdf(x); }), 1.63 / std::sqrt(m) * 1.5);
  EXPECT_NEAR(sample.mean(), law.mean(), 5.0 * std::sqrt(law.variance() / m));
  EXPECT_NEAR(sample.variance() / law.variance(), 1.0, 0.05);
}

INSTANTIATE_TEST_SUITE_P(Ensembles, ShadowLawProperty,
                         ::testing::Values(EnsembleCase{"complex", 4}, EnsembleCase{"real", 4},
                                           EnsembleCase{"real", 5}, EnsembleCase{"mixed:2", 3},
                                           EnsembleCase{"quaternion", 4}, EnsembleCase{"entangled-complex", 4},
                                           EnsembleCase{"entangled-real", 4}),
                         [](const auto& info) {
                           std::string name = info.param.ensemble;
                           for (auto& c : name)
                             if (c == '-' || c == ':') c = '_';
                           return name + "_" + std::to_string(info.param.n);
                         });

}  // namespace
}  // namespace shadowlab
