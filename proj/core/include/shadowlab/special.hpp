#pragma once

namespace shadowlab {

/// Gauss hypergeometric 2F1(a, b; c; z) by its power series, summed until the
/// tail bound drops below 1e-14 (at most 1e5 terms). Accepts |z| < 1, and
/// z = 1 when the series terminates. DomainError if c is a non-positive
/// integer, ConvergenceError otherwise outside the disc.
double hyp2f1(double a, double b, double c, double z);

/// Arithmetic-geometric mean of two non-negative numbers.
double agm(double x, double y);

/// E(b1, b2; b3, b4) = (1/pi) int_{b3}^{b4} ((b4-s)(s-b3)(s-b2)(s-b1))^(-1/2) ds
/// for b1 < b2 < b3 <= b4, through the 2F1(1/2, 1/2; 1; z) closed form (the
/// series for small z, the AGM otherwise). b3 == b4 gives the limit
/// ((b3-b1)(b4-b2))^(-1/2).
double elliptic_E(double b1, double b2, double b3, double b4);

/// The same integral by n-point Gauss-Chebyshev quadrature on [b3, b4] with
/// h(s) = ((s-b2)(s-b1))^(-1/2). Independent of the closed form.
double elliptic_E_quadrature(double b1, double b2, double b3, double b4, unsigned n = 64);

}  // namespace shadowlab
