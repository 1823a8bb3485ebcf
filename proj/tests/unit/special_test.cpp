#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shadowlab/error.hpp"
#include "shadowlab/random.hpp"
#include "shadowlab/special.hpp"

namespace shadowlab {
namespace {

// Frozen high-precision values (mpmath, 30 digits).
constexpr double kE0123 = 0.536591003574682182513;
constexpr double kE0124 = 0.450643149680223644894;
constexpr double kF_half_half_one_half = 1.18034059901609622605;

TEST(Hyp2f1, Basics) {
  EXPECT_EQ(hyp2f1(0.5, 0.5, 1.0, 0.0), 1.0);
  EXPECT_NEAR(hyp2f1(-1.0, 1.0, 2.0, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(hyp2f1(0.5, 0.5, 1.0, 0.5), kF_half_half_one_half, 1e-14);
  // 2F1(1,1;2;z) = -log(1-z)/z
  for (double z : {0.1, 0.6, 0.95}) {
    EXPECT_NEAR(hyp2f1(1, 1, 2, z), -std::log1p(-z) / z, 1e-12);
  }
}

TEST(Hyp2f1, MatchesChebyshevElliptic) {
  // E(0,1;2,3) = ((b3-b1)(b4-b2))^(-1/2) 2F1(1/2,1/2;1;z), z = 1/4 here.
  const double z = (1.0 * 1.0) / (2.0 * 2.0);
  const double viaF = hyp2f1(0.5, 0.5, 1.0, z) / std::sqrt(2.0 * 2.0);
  EXPECT_NEAR(viaF, elliptic_E_quadrature(0, 1, 2, 3), 1e-8);
}

TEST(Hyp2f1, RejectsDivergentArguments) {
  EXPECT_THROW(hyp2f1(0.5, 0.5, 1.0, 1.0), ConvergenceError);
  EXPECT_THROW(hyp2f1(0.5, 0.5, 1.0, -1.5), ConvergenceError);
  EXPECT_THROW(hyp2f1(0.5, 0.5, -2.0, 0.3), DomainError);
}

TEST(Agm, KnownValue) {
  // Gauss's constant: 1 / agm(1, sqrt 2).
  EXPECT_NEAR(1.0 / agm(1.0, std::numbers::sqrt2), 0.834626841674073186, 1e-15);
  EXPECT_EQ(agm(2.0, 2.0), 2.0);
}

TEST(EllipticE, FrozenValues) {
  EXPECT_NEAR(elliptic_E(0, 1, 2, 3), kE0123, 1e-14);
  EXPECT_NEAR(elliptic_E(0, 1, 2, 4), kE0124, 1e-14);
}

TEST(EllipticE, CoincidentUpperPairLimit) {
  EXPECT_NEAR(elliptic_E(0, 1, 2, 2), 1.0 / std::sqrt(2.0 * 1.0), 1e-15);
  EXPECT_NEAR(elliptic_E_quadrature(0, 1, 2, 2), 1.0 / std::sqrt(2.0), 1e-13);
}

TEST(EllipticE, RejectsBadOrdering) {
  EXPECT_THROW(elliptic_E(0, 1, 1, 3), DomainError);
  EXPECT_THROW(elliptic_E(1, 0, 2, 3), DomainError);
  EXPECT_THROW(elliptic_E(0, 1, 3, 2), DomainError);
}

// Property: closed form and Chebyshev quadrature agree, including near z -> 1.
TEST(EllipticProperty, ClosedFormMatchesQuadrature) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    double b[4];
    for (double& v : b) v = -3 + 6 * rng.uniform();
    std::sort(b, b + 4);
    if (b[2] - b[1] < 0.1) continue;
    const double closed = elliptic_E(b[0], b[1], b[2], b[3]);
    const double quad = elliptic_E_quadrature(b[0], b[1], b[2], b[3], 400);
    EXPECT_NEAR(closed / quad, 1.0, 1e-10) << b[0] << ' ' << b[1] << ' ' << b[2] << ' ' << b[3];
  }
}

// Property: E(alpha b + beta) = E(b) / alpha.
TEST(EllipticProperty, AffineCovariance) {
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const double alpha = 0.2 + 3 * rng.uniform(), beta = -2 + 4 * rng.uniform();
    double b[4];
    for (double& v : b) v = 5 * rng.uniform();
    std::sort(b, b + 4);
    if (b[2] - b[1] < 1e-3) continue;
    const double lhs = elliptic_E(alpha * b[0] + beta, alpha * b[1] + beta, alpha * b[2] + beta,
                                  alpha * b[3] + beta);
    EXPECT_NEAR(lhs * alpha / elliptic_E(b[0], b[1], b[2], b[3]), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace shadowlab
