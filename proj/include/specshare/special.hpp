#pragma once

namespace specshare::special {

/// Exponential integral E1(y) = integral from y to infinity of e^-t / t dt,
/// equal to -Ei(-y). Power series for y <= 1, continued fraction beyond.
/// Relative accuracy about 1e-13. Throws DomainError for y <= 0.
double exp_integral_e1(double y);

// Gamma(a + s) / Gamma(a) evaluated through lgamma; a > 0, a + s > 0.
double gamma_ratio(double a, double s);

}  // namespace specshare::special
