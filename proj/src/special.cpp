#include "specshare/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "specshare/errors.hpp"

namespace specshare::special {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxTerms = 500;

// -gamma - ln y - sum_{k>=1} (-y)^k / (k k!)
double e1_series(double y) {
  double sum = 0.0;
  double term = 1.0;  // (-y)^k / k!
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= -y / k;
    const double contribution = term / k;
    sum += contribution;
    if (std::abs(contribution) < kEps * std::abs(sum)) break;
  }
  return -std::numbers::egamma - std::log(y) - sum;
}

// Modified Lentz evaluation of e^-y / (y + 1 - 1/(y + 3 - 4/(y + 5 - ...))).
double e1_continued_fraction(double y) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = y + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) return h * std::exp(-y);
  }
  throw NumericalError("E1 continued fraction did not converge at y = " + std::to_string(y));
}

}  // namespace

double exp_integral_e1(double y) {
  if (!(y > 0.0)) {
    throw DomainError("E1(y) is defined for y > 0 only, got " + std::to_string(y));
  }
  if (std::isinf(y)) return 0.0;
  return y <= 1.0 ? e1_series(y) : e1_continued_fraction(y);
}

double gamma_ratio(double a, double s) {
  return std::exp(std::lgamma(a + s) - std::lgamma(a));
}

}  // namespace specshare::special
