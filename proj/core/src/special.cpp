#include "shadowlab/special.hpp"

#include <cmath>

#include "shadowlab/error.hpp"
#include "shadowlab/quadrature.hpp"

namespace shadowlab {

namespace {

bool non_positive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

void check_order(double b1, double b2, double b3, double b4) {
  if (!(b1 < b2 && b2 < b3 && b3 <= b4)) {
    throw DomainError("elliptic_E needs b1 < b2 < b3 <= b4");
  }
}

}  // namespace

double hyp2f1(double a, double b, double c, double z) {
  if (non_positive_integer(c)) throw DomainError("hyp2f1: c is a non-positive integer");
  const bool terminates = non_positive_integer(a) || non_positive_integer(b);
  if (!terminates && !(std::abs(z) < 1.0)) {
    throw ConvergenceError("hyp2f1: series diverges for |z| >= 1");
  }
  double term = 1.0, sum = 1.0;
  const double az = std::abs(z);
  for (int n = 0; n < 100000; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;
    // Once the ratio of consecutive terms settles below |z| the remaining
    // tail is bounded by a geometric series.
    if (!terminates && std::abs(term) * az / (1.0 - az) < 1e-14 * std::max(1.0, std::abs(sum)) &&
        n > std::abs(a) + std::abs(b)) {
      return sum;
    }
  }
  throw ConvergenceError("hyp2f1: term cap reached");
}

double agm(double x, double y) {
  if (x < 0.0 || y < 0.0) throw DomainError("agm needs non-negative arguments");
  for (int i = 0; i < 64; ++i) {
    const double m = 0.5 * (x + y);
    const double g = std::sqrt(x * y);
    if (std::abs(m - g) <= 1e-16 * m) return m;
    x = m;
    y = g;
  }
  return 0.5 * (x + y);
}

double elliptic_E(double b1, double b2, double b3, double b4) {
  check_order(b1, b2, b3, b4);
  const double pre = 1.0 / std::sqrt((b3 - b1) * (b4 - b2));
  const double z = (b4 - b3) * (b2 - b1) / ((b3 - b1) * (b4 - b2));
  if (z <= 0.5) return pre * hyp2f1(0.5, 0.5, 1.0, z);
  // 1 - z factored exactly, so the log singularity as b3 -> b2 keeps its digits.
  const double one_minus_z = (b3 - b2) * (b4 - b1) / ((b3 - b1) * (b4 - b2));
  return pre / agm(1.0, std::sqrt(one_minus_z));
}

double elliptic_E_quadrature(double b1, double b2, double b3, double b4, unsigned n) {
  check_order(b1, b2, b3, b4);
  if (b3 == b4) return 1.0 / std::sqrt((b3 - b1) * (b4 - b2));
  return gauss_chebyshev([=](double s) { return 1.0 / std::sqrt((s - b2) * (s - b1)); }, b3,
                         b4, n);
}

}  // namespace shadowlab
