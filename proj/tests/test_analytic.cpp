#include <doctest.h>

#include <boost/math/special_functions/expint.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "specshare/analytic.hpp"
#include "specshare/errors.hpp"
#include "specshare/montecarlo.hpp"
#include "specshare/quadrature.hpp"

using namespace specshare;
using namespace specshare::analytic;
using channel::FadingModel;

namespace {

// Independent transcription of the bound formulas.
double ref_lower(double x) { return 1.0 - std::exp(-x); }
double ref_xi(double x, double delta) {
  const double t = delta * x / (1.0 - delta);
  if (t >= 1.0) return 0.0;
  return std::max(0.0, 1.0 - (delta / (2.0 - delta)) * x / ((1.0 - t) * (1.0 - t)));
}
double ref_chi(double theta, double kappa, double delta) {
  return 1.0 - std::pow(theta, -delta) * std::pow(kappa, -delta);
}

const double kKappa = std::pow(10.0, 0.2);

}  // namespace

TEST_CASE("zeta") {
  CHECK(zeta(1.0, 0.3, FadingModel::unit()) == doctest::Approx(std::numbers::pi));
  CHECK(zeta(1.0, 0.7, FadingModel::unit()) == doctest::Approx(std::numbers::pi));
  const double z = zeta(3.0, 0.5, FadingModel::rayleigh());
  CHECK(z == doctest::Approx(std::numbers::pi * std::sqrt(3.0) * std::tgamma(1.5)).epsilon(1e-14));
  CHECK(z == doctest::Approx(4.8222).epsilon(1e-4));
  ScenarioConfig reference;
  CHECK(zeta(reference.sir_threshold, reference.delta(), reference.fading_interferer) == doctest::Approx(z));
  CHECK(zeta(3.0, 0.5, FadingModel::diversity(3)) ==
        doctest::Approx(std::numbers::pi * std::sqrt(3.0) * std::tgamma(3.5) / std::tgamma(3.0)));
  CHECK_THROWS_AS(zeta(0.5, 0.5, FadingModel::unit()), InvalidParameter);
  CHECK_THROWS_AS(zeta(3.0, 1.0, FadingModel::unit()), InvalidParameter);
}

TEST_CASE("outage bounds pointwise") {
  const double z = 4.8222;
  CHECK(outage_lower(1.0, 10.0, 0.0, z, 0.5) == 0.0);
  CHECK(outage_lower(1.0, 10.0, 1e-3, z, 0.5) == doctest::Approx(0.382590).epsilon(1e-6));
  CHECK(outage_lower(1.0, 10.0, 1e-3, z, 0.5) == doctest::Approx(ref_lower(0.48222)).epsilon(1e-14));
  // d^2 law.
  CHECK(-std::log1p(-outage_lower(2.0, 20.0, 1e-4, z, 0.5)) ==
        doctest::Approx(4.0 * -std::log1p(-outage_lower(2.0, 10.0, 1e-4, z, 0.5))));

  CHECK(xi(1.0, 10.0, 0.0, z, 0.5) == 1.0);
  // x = zeta d^2 w^-delta lambda = 0.2 at w = 1, d = 1, zeta = 1.
  CHECK(xi(1.0, 1.0, 0.2, 1.0, 0.5) == doctest::Approx(0.89583).epsilon(1e-5));
  // Branch boundary: delta x / (1 - delta) = 1.
  CHECK(xi(1.0, 1.0, 1.0, 1.0, 0.5) == 0.0);
  CHECK(xi(1.0, 1.0, 0.999999, 1.0, 0.5) == 0.0);  // clamped by [.]^+ before the boundary

  CHECK(outage_upper(1.0, 10.0, 0.0, z, 0.5) == 0.0);
  const double x = 0.48222;
  CHECK(outage_upper(1.0, 10.0, 1e-3, z, 0.5) ==
        doctest::Approx(1.0 - ref_xi(x, 0.5) * std::exp(-x)).epsilon(1e-13));

  RandomStream rng(5);
  for (int i = 0; i < 2000; ++i) {
    const double w = 0.01 + 3.0 * rng.uniform();
    const double d = 0.5 + 30.0 * rng.uniform();
    const double lambda = 1e-3 * rng.uniform();
    const double delta = 0.1 + 0.8 * rng.uniform();
    const double zz = 1.0 + 5.0 * rng.uniform();
    const double lo = outage_lower(w, d, lambda, zz, delta);
    const double hi = outage_upper(w, d, lambda, zz, delta);
    const double xx = zz * lambda * std::pow(w, -delta) * d * d;
    CHECK(lo <= hi);
    CHECK(lo == doctest::Approx(ref_lower(xx)).epsilon(1e-12));
    CHECK(xi(w, d, lambda, zz, delta) == doctest::Approx(ref_xi(xx, delta)).epsilon(1e-12));
    // Monotone: up in lambda and d, down in w.
    CHECK(outage_lower(w, d, 1.1 * lambda + 1e-9, zz, delta) > lo);
    CHECK(outage_lower(w, 1.1 * d, lambda + 1e-9, zz, delta) >= lo);
    CHECK(outage_lower(1.1 * w, d, lambda, zz, delta) <= lo);
    CHECK(outage_upper(w, d, 1.1 * lambda + 1e-9, zz, delta) >= hi);
  }
}

TEST_CASE("SIC variants scale the strong-interferer exponent only") {
  const double chi = sic_chi(3.0, kKappa, 0.5);
  const double z = 4.8222;
  CHECK(outage_lower_sic(1.0, 10.0, 1e-3, z, 0.5, chi) == doctest::Approx(ref_lower(chi * 0.48222)));
  CHECK(outage_upper_sic(1.0, 10.0, 1e-3, z, 0.5, chi) ==
        doctest::Approx(1.0 - ref_xi(0.48222, 0.5) * std::exp(-chi * 0.48222)));
  CHECK(outage_lower_sic(1.0, 10.0, 1e-3, z, 0.5, 1.0) == outage_lower(1.0, 10.0, 1e-3, z, 0.5));
}

TEST_CASE("sic_chi") {
  CHECK(sic_chi(3.0, kKappa, 0.5) == doctest::Approx(ref_chi(3.0, kKappa, 0.5)).epsilon(1e-15));
  CHECK(sic_chi(3.0, kKappa, 0.5) == doctest::Approx(0.5413944).epsilon(1e-7));
  CHECK(sic_chi(3.0, 1e12, 0.5) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(sic_chi(3.0, kKappa, 0.5) - 0.54) < 0.005);
  for (const double theta : {1.0, 2.0, 10.0}) {
    for (const double kappa : {1.01, 2.0, 100.0}) {
      const double c = sic_chi(theta, kappa, 0.5);
      CHECK(c > 0.0);
      CHECK(c < 1.0);
    }
  }
  CHECK_THROWS_AS(sic_chi(3.0, 1.0, 0.5), InvalidParameter);
  ScenarioConfig cfg;
  CHECK(sic_chi(cfg) == 1.0);
  cfg.sic.enabled = true;
  CHECK(sic_chi(cfg) == doctest::Approx(ref_chi(3.0, kKappa, 0.5)));
}

TEST_CASE("effective_density") {
  ScenarioConfig cfg;
  cfg.cellular_density = 2e-4;
  cfg.manet_density = 3e-4;
  CHECK(effective_density(cfg, Network::cellular) == doctest::Approx(2e-4 / 5));
  CHECK(effective_density(cfg, Network::manet) == doctest::Approx(3e-4 / 5));

  cfg.mode = SharingMode::underlay;
  cfg.cellular_density = 1e-3;
  cfg.manet_density = 1e-3;
  cfg.power_ratio = std::pow(10.0, 0.5);
  CHECK(effective_density(cfg, Network::cellular) == doctest::Approx(1.5623e-4).epsilon(1e-4));
  CHECK(effective_density(cfg, Network::cellular) ==
        doctest::Approx((1e-3 + std::pow(10.0, -0.25) * 1e-3) / 10).epsilon(1e-14));
  CHECK(effective_density(cfg, Network::manet) ==
        doctest::Approx((std::pow(10.0, 0.25) * 1e-3 + 1e-3) / 10).epsilon(1e-14));

  cfg.power_ratio = 1.0;
  CHECK(effective_density(cfg, Network::cellular) == doctest::Approx(2e-4));
  CHECK(effective_density(cfg, Network::manet) == doctest::Approx(2e-4));

  // Underlay with no MANET equals overlay with K = M.
  cfg.power_ratio = 3.0;
  cfg.manet_density = 0.0;
  ScenarioConfig over = cfg;
  over.mode = SharingMode::overlay;
  over.cellular_subchannels = cfg.total_subchannels;
  over.manet_subchannels = 0;
  CHECK(effective_density(cfg, Network::cellular) == effective_density(over, Network::cellular));
}

TEST_CASE("link-distance density") {
  CHECK(distance_pdf(0.0, 1e-3) == 0.0);
  for (const double lambda_b : {1e-4, 1e-3, 1e-2}) {
    const double b = 4.0 * std::numbers::pi * lambda_b;
    for (const double t : {0.5, 3.0, 10.0, 30.0}) {
      // f_D = 2 b t E1(b t^2), with Boost's E1 as the reference.
      const double ref = 2.0 * b * t * boost::math::expint(1, b * t * t);
      CHECK(distance_pdf(t, lambda_b) == doctest::Approx(ref).epsilon(1e-12));
    }
    const double t_max = distance_tail_bound(lambda_b, 1e-13);
    quadrature::Options q;
    q.abs_tolerance = 1e-13;
    q.max_depth = 20;
    double mass = 0.0;
    double second = 0.0;
    for (int i = 0; i < 16; ++i) {
      const double a = t_max * i / 16.0;
      const double c = t_max * (i + 1) / 16.0;
      mass += quadrature::integrate([&](double t) { return distance_pdf(t, lambda_b); }, a, c, q);
      second += quadrature::integrate([&](double t) { return t * t * distance_pdf(t, lambda_b); }, a, c, q);
    }
    CHECK(std::abs(mass - 1.0) < 1e-8);
    CHECK(second == doctest::Approx(1.0 / (8.0 * std::numbers::pi * lambda_b)).epsilon(1e-6));
    CHECK(mean_square_link_distance(lambda_b) == doctest::Approx(1.0 / (8.0 * std::numbers::pi * lambda_b)));
  }
  CHECK(mean_square_link_distance(1e-3) == doctest::Approx(39.7887).epsilon(1e-6));
}

TEST_CASE("expected bounds: degenerate and point-mass cases") {
  ScenarioConfig cfg;
  cfg.cellular_density = 0.0;
  const BoundPair zero = expected_outage_bounds(cfg, Network::cellular);
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == 0.0);

  cfg.manet_density = 2e-4;
  cfg.fading_manet = FadingModel::unit();
  const double z = zeta(cfg.sir_threshold, cfg.delta(), cfg.fading_interferer);
  const BoundPair m = expected_outage_bounds(cfg, Network::manet);
  CHECK(m.lower == doctest::Approx(outage_lower(1.0, 5.0, 2e-4 / 5, z, 0.5)).epsilon(1e-15));
  CHECK(m.upper == doctest::Approx(outage_upper(1.0, 5.0, 2e-4 / 5, z, 0.5)).epsilon(1e-15));
}

TEST_CASE("expected lower bound over D matches the closed form for unit served-link fading") {
  ScenarioConfig cfg;
  cfg.fading_cell = FadingModel::unit();
  const double z = zeta(cfg.sir_threshold, cfg.delta(), cfg.fading_interferer);
  for (const double lambda : {1e-5, 1e-4, 1e-3, 1e-2}) {
    cfg.cellular_density = lambda;
    const double a = z * lambda / cfg.cellular_subchannels;
    const BoundPair b = expected_outage_bounds(cfg, Network::cellular);
    INFO("lambda=" << lambda);
    CHECK(std::abs(b.lower - oracle::link_distance_lower_bound(a, cfg.base_station_density)) < 1e-9);
    CHECK(b.upper >= b.lower);
  }
}

TEST_CASE("expected lower bound: quadrature vs direct sampling over (W, D)") {
  ScenarioConfig cfg;
  cfg.cellular_density = 1e-5 * cfg.cellular_subchannels;
  const double lambda_eff = effective_density(cfg, Network::cellular);
  const double z = zeta(cfg.sir_threshold, cfg.delta(), cfg.fading_interferer);
  const BoundPair b = expected_outage_bounds(cfg, Network::cellular);

  RandomStream rng(31);
  const int n = 10000000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = montecarlo::sample_link_distance(cfg.base_station_density, rng).link;
    const double w = channel::draw_fade(cfg.fading_cell, rng);
    const double v = ref_lower(z * lambda_eff * std::pow(w, -cfg.delta()) * d * d);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  CHECK(std::abs(b.lower - mean) < 3.0 * se);
}

TEST_CASE("expected bounds: ordering, monotonicity and small-density slope") {
  ScenarioConfig cfg;
  for (const Network net : {Network::cellular, Network::manet}) {
    double prev_lo = 0.0;
    double prev_hi = 0.0;
    for (const double lambda : {1e-5, 1e-4, 1e-3}) {
      cfg.cellular_density = lambda;
      cfg.manet_density = lambda;
      const BoundPair b = expected_outage_bounds(cfg, net);
      CHECK(0.0 <= b.lower);
      CHECK(b.lower <= b.upper);
      CHECK(b.upper <= 1.0);
      CHECK(b.lower > prev_lo);
      CHECK(b.upper > prev_hi);
      prev_lo = b.lower;
      prev_hi = b.upper;
    }
  }

  // lower / lambda -> zeta E[W^-delta] / (8 pi lambda_b K).
  cfg.cellular_density = 2e-6;
  const BoundPair b = expected_outage_bounds(cfg, Network::cellular);
  REQUIRE(b.lower < 1e-3);
  const double z = zeta(cfg.sir_threshold, cfg.delta(), cfg.fading_interferer);
  const double slope = z * std::tgamma(1.0 - cfg.delta()) /
                       (8.0 * std::numbers::pi * cfg.base_station_density * cfg.cellular_subchannels);
  CHECK(b.lower / cfg.cellular_density == doctest::Approx(slope).epsilon(0.01));

  // SIC lowers both bounds; the lower one by chi to first order.
  ScenarioConfig sic = cfg;
  sic.sic.enabled = true;
  const BoundPair s = expected_outage_bounds(sic, Network::cellular);
  CHECK(s.lower < b.lower);
  CHECK(s.upper < b.upper);
  CHECK(s.lower / b.lower == doctest::Approx(sic_chi(sic)).epsilon(0.01));
}

TEST_CASE("trade-off weights") {
  ScenarioConfig cfg;
  const double z = zeta(3.0, 0.5, FadingModel::rayleigh());
  const double e_inv = std::tgamma(0.5);  // E[W^-1/2] for Rayleigh
  const TradeoffWeights o = tradeoff_weights(cfg);
  CHECK(o.mu == doctest::Approx(z * e_inv / (8.0 * std::numbers::pi * 1e-3)));
  CHECK(o.mu_tilde == doctest::Approx(z * e_inv * 25.0));
  CHECK(o.phi_low == 1.0);
  CHECK(o.phi_high == 1.0);

  cfg.sic.enabled = true;
  const TradeoffWeights s = tradeoff_weights(cfg);
  const double g = std::pow(3.0 * kKappa, -0.5);
  CHECK(s.phi_low == doctest::Approx(1.0 - g).epsilon(1e-14));
  CHECK(s.phi_high == doctest::Approx(4.0 / 3.0 - g).epsilon(1e-14));
  CHECK(s.phi_low < s.phi_high);

  cfg.sic.enabled = false;
  cfg.mode = SharingMode::underlay;
  const TradeoffWeights u = tradeoff_weights(cfg);
  const double eta_d = std::pow(cfg.power_ratio, 0.5);
  CHECK(u.mu == doctest::Approx(std::max(o.mu, eta_d * o.mu_tilde)));
  CHECK(u.mu_tilde == doctest::Approx(std::max(o.mu_tilde, o.mu / eta_d)));
  // eta = 5 dB exceeds eta* here, so the MANET constraint binds.
  CHECK(u.limited == OutageLimited::manet);
  cfg.power_ratio = 1.0;
  CHECK(tradeoff_weights(cfg).limited == OutageLimited::cellular);
}

TEST_CASE("optimal power ratio") {
  ScenarioConfig cfg;
  cfg.mode = SharingMode::underlay;
  // Symmetric: E[D^2] = d~^2.
  cfg.base_station_density = 1.0 / (8.0 * std::numbers::pi * 25.0);
  CHECK(optimal_power_ratio(cfg) == doctest::Approx(1.0).epsilon(1e-14));

  // mu_o = 4 mu~_o with delta = 0.5 gives 16.
  cfg.base_station_density = 1.0 / (8.0 * std::numbers::pi * 100.0);
  CHECK(optimal_power_ratio(cfg) == doctest::Approx(16.0).epsilon(1e-13));

  ScenarioConfig ref;
  ref.mode = SharingMode::overlay;
  const TradeoffWeights over = tradeoff_weights(ref);
  ref.mode = SharingMode::underlay;
  ref.power_ratio = optimal_power_ratio(ref);
  const TradeoffWeights under = tradeoff_weights(ref);
  CHECK(std::abs(under.mu / over.mu - 1.0) <= 1e-12);
  CHECK(std::abs(under.mu_tilde / over.mu_tilde - 1.0) <= 1e-12);
  CHECK(under.limited == OutageLimited::both);

  // Any other eta shrinks the region.
  for (const double eta_db : {-10.0, -3.0, 0.0, 2.0, 5.0, 10.0}) {
    ref.power_ratio = std::pow(10.0, eta_db / 10.0);
    const TradeoffWeights w = tradeoff_weights(ref);
    CHECK(w.mu >= over.mu);
    CHECK(w.mu_tilde >= over.mu_tilde);
  }
}

TEST_CASE("capacity line") {
  ScenarioConfig cfg;
  const CapacityLine line = capacity_line(cfg);
  CHECK(line.m_eps == doctest::Approx(0.1));
  CHECK(line.c_cell_max_low_phi == doctest::Approx(0.1 / line.weights.mu));
  CHECK(line.c_manet_max_low_phi == doctest::Approx(0.1 / line.weights.mu_tilde));
  CHECK(line.cellular_capacity(0.0, 1.0) == doctest::Approx(line.c_cell_max_low_phi));
  CHECK(line.cellular_capacity(line.c_manet_max_low_phi, 1.0) == 0.0);
  CHECK(line.cellular_capacity(2.0 * line.c_manet_max_low_phi, 1.0) == 0.0);
  const double mid = 0.5 * line.c_manet_max_low_phi;
  CHECK(line.weights.mu_tilde * mid + line.weights.mu * line.cellular_capacity(mid, 1.0) ==
        doctest::Approx(line.m_eps));

  cfg.sic.enabled = true;
  const CapacityLine s = capacity_line(cfg);
  CHECK(s.rhs_high == doctest::Approx(0.1 / s.weights.phi_low));
  CHECK(s.rhs_low == doctest::Approx(0.1 / s.weights.phi_high));
  CHECK(s.c_cell_max_low_phi > s.c_cell_max_high_phi);

  // Underlay region inside the overlay region for any eta.
  ScenarioConfig u;
  u.mode = SharingMode::underlay;
  for (const double eta : {0.1, 1.0, 3.0, 30.0}) {
    u.power_ratio = eta;
    const CapacityLine ul = capacity_line(u);
    CHECK(ul.c_cell_max_low_phi <= line.c_cell_max_low_phi * (1 + 1e-15));
    CHECK(ul.c_manet_max_low_phi <= line.c_manet_max_low_phi * (1 + 1e-15));
  }
}

TEST_CASE("diversity factor and Kershaw bounds") {
  const auto [lo1, hi1] = diversity_factor_bounds(1, 0.5);
  CHECK(lo1 == 0.0);
  CHECK(hi1 == 1.0);
  for (const double delta : {0.1, 0.5, 0.9}) {
    const double f = diversity_factor(1, delta);
    CHECK(f > 0.0);
    CHECK(f < 1.0);
  }
  const auto [lo2, hi2] = diversity_factor_bounds(2, 0.5);
  CHECK(lo2 == 1.0);
  CHECK(hi2 == doctest::Approx(1.41421).epsilon(1e-5));
  CHECK(diversity_factor(2, 0.5) == doctest::Approx(1.12838).epsilon(1e-5));
  CHECK(diversity_factor(2, 0.5) == doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));

  const auto [lo8, hi8] = diversity_factor_bounds(8, 0.5);
  CHECK(lo8 == doctest::Approx(2.64575).epsilon(1e-5));
  CHECK(hi8 == doctest::Approx(2.82843).epsilon(1e-5));
  const double exact8 = std::tgamma(8.0) / std::tgamma(7.5);
  CHECK(diversity_factor(8, 0.5) == doctest::Approx(exact8).epsilon(1e-13));
  CHECK(diversity_factor(8, 0.5) == doctest::Approx(2.69339).epsilon(1e-5));

  for (int l = 1; l <= 12; ++l) {
    for (int k = 1; k <= 9; ++k) {
      const double delta = 0.1 * k;
      const double exact = std::tgamma(double(l)) / std::tgamma(l - delta);
      CHECK(std::pow(l - 1.0, delta) <= exact);
      CHECK(exact <= std::pow(double(l), delta));
      // Multiplier relative to unit fading: E[W^-delta] = 1 / factor.
      CHECK(FadingModel::diversity(l).moment(-delta) * diversity_factor(l, delta) == doctest::Approx(1.0));
    }
  }

  // Kershaw: (x + s/2)^(1-s) < Gamma(x+1)/Gamma(x+s) < (x - 1/2 + sqrt(s + 1/4))^(1-s).
  for (const double x : {1.0, 1.5, 3.0, 10.0}) {
    for (const double s : {0.1, 0.5, 0.9}) {
      const double ratio = std::tgamma(x + 1.0) / std::tgamma(x + s);
      const auto [klo, khi] = kershaw_bounds(x, s);
      CHECK(klo < ratio);
      CHECK(ratio < khi);
    }
  }
  // The reciprocal orientation fails at x = 1, s = 0.5.
  const double inverse = std::tgamma(1.5) / std::tgamma(2.0);
  const auto [klo, khi] = kershaw_bounds(1.0, 0.5);
  CHECK_FALSE((klo < inverse && inverse < khi));
}
