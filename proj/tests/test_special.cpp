#include <doctest.h>

#include <boost/math/special_functions/expint.hpp>

#include <cmath>
#include <limits>

#include "specshare/errors.hpp"
#include "specshare/quadrature.hpp"
#include "specshare/special.hpp"

using namespace specshare;

TEST_CASE("E1 against Boost and std::expint") {
  CHECK(special::exp_integral_e1(1.0) == doctest::Approx(0.219383934).epsilon(1e-9));
  for (double y = 1e-8; y < 700.0; y *= 1.37) {
    const double ours = special::exp_integral_e1(y);
    const double boost_e1 = boost::math::expint(1, y);
    const double std_e1 = -std::expint(-y);
    INFO("y=" << y);
    CHECK(std::abs(ours / boost_e1 - 1.0) < 1e-12);
    // libstdc++ loses accuracy in its large-argument branch.
    if (y < 100.0) CHECK(std::abs(ours / std_e1 - 1.0) < 1e-12);
  }
  // Around the series / continued-fraction switch.
  for (const double y : {0.999999, 1.0, 1.000001}) {
    CHECK(std::abs(special::exp_integral_e1(y) / boost::math::expint(1, y) - 1.0) < 1e-12);
  }
}

TEST_CASE("E1 envelope, decay and domain") {
  for (const double y : {0.1, 1.0, 10.0}) CHECK(special::exp_integral_e1(y) < std::exp(-y) / y);
  double prev = special::exp_integral_e1(0.01);
  for (double y = 0.02; y < 800.0; y *= 1.5) {
    const double v = special::exp_integral_e1(y);
    CHECK(v < prev);
    CHECK(v >= 0.0);
    prev = v;
  }
  CHECK(special::exp_integral_e1(std::numeric_limits<double>::infinity()) == 0.0);
  CHECK_THROWS_AS(special::exp_integral_e1(0.0), DomainError);
  CHECK_THROWS_AS(special::exp_integral_e1(-1.0), DomainError);
}

TEST_CASE("gamma_ratio") {
  CHECK(special::gamma_ratio(1.0, 0.5) == doctest::Approx(std::tgamma(1.5)).epsilon(1e-14));
  CHECK(special::gamma_ratio(8.0, -0.5) == doctest::Approx(std::tgamma(7.5) / std::tgamma(8.0)).epsilon(1e-13));
  CHECK(special::gamma_ratio(200.0, 0.3) ==
        doctest::Approx(std::exp(std::lgamma(200.3) - std::lgamma(200.0))).epsilon(1e-12));
}

TEST_CASE("Gauss-Legendre rules") {
  for (const int n : {1, 2, 5, 16, 64}) {
    const auto rule = quadrature::gauss_legendre(n);
    REQUIRE(rule.nodes.size() == std::size_t(n));
    double w = 0.0;
    double x2 = 0.0;
    for (int i = 0; i < n; ++i) {
      w += rule.weights[i];
      x2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    if (n >= 2) CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
  // Exact for polynomials of degree 2n - 1.
  const auto rule = quadrature::gauss_legendre(4);
  double x7 = 0.0;
  double x6 = 0.0;
  for (int i = 0; i < 4; ++i) {
    x7 += rule.weights[i] * std::pow(rule.nodes[i], 7);
    x6 += rule.weights[i] * std::pow(rule.nodes[i], 6);
  }
  CHECK(std::abs(x7) < 1e-15);
  CHECK(x6 == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
  CHECK_THROWS(quadrature::gauss_legendre(0));
}

TEST_CASE("adaptive integration") {
  CHECK(quadrature::integrate([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  // Endpoint singularity in the derivative.
  CHECK(quadrature::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(quadrature::integrate([](double x) { return -std::log(x); }, 0.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(quadrature::integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
  quadrature::Options tight;
  tight.max_depth = 6;
  tight.label = "divergent";
  CHECK_THROWS_AS(quadrature::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, tight), NumericalError);
}
