#include "specshare/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "specshare/errors.hpp"

namespace specshare::analytic {

using std::numbers::pi;

std::string_view to_string(OutageLimited limited) noexcept {
  switch (limited) {
    case OutageLimited::cellular:
      return "cellular";
    case OutageLimited::manet:
      return "manet";
    case OutageLimited::both:
      return "both";
  }
  return "both";
}

double CapacityLine::cellular_capacity(double c_manet, double phi) const {
  const double rhs = m_eps / phi;
  return std::max(0.0, rhs / weights.mu * (1.0 - c_manet / (rhs / weights.mu_tilde)));
}

double zeta(double theta, double delta, const channel::FadingModel& fading_interferer) {
  if (!(theta >= 1.0)) throw InvalidParameter("zeta requires theta >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("zeta requires delta in (0, 1)");
  return pi * std::pow(theta, delta) * fading_interferer.moment(delta);
}

namespace {

// zeta lambda w^-delta d^2
double strong_mean(double w, double d, double lambda_eff, double zeta, double delta) {
  return zeta * lambda_eff * std::pow(w, -delta) * d * d;
}

}  // namespace

double outage_lower(double w, double d, double lambda_eff, double zeta, double delta) {
  return outage_lower_sic(w, d, lambda_eff, zeta, delta, 1.0);
}

double xi(double w, double d, double lambda_eff, double zeta, double delta) {
  const double x = strong_mean(w, d, lambda_eff, zeta, delta);
  const double a = delta / (1.0 - delta) * x;
  if (a >= 1.0) return 0.0;
  const double v = 1.0 - (delta / (2.0 - delta)) * x / ((1.0 - a) * (1.0 - a));
  return std::max(v, 0.0);
}

double outage_upper(double w, double d, double lambda_eff, double zeta, double delta) {
  return outage_upper_sic(w, d, lambda_eff, zeta, delta, 1.0);
}

double outage_lower_sic(double w, double d, double lambda_eff, double zeta, double delta,
                        double chi) {
  return -std::expm1(-chi * strong_mean(w, d, lambda_eff, zeta, delta));
}

double outage_upper_sic(double w, double d, double lambda_eff, double zeta, double delta,
                        double chi) {
  const double x = strong_mean(w, d, lambda_eff, zeta, delta);
  return 1.0 - xi(w, d, lambda_eff, zeta, delta) * std::exp(-chi * x);
}

double effective_density(const ScenarioConfig& cfg, Network network) {
  const double m = cfg.total_subchannels;
  if (cfg.mode == SharingMode::overlay) {
    // K = 0 implies a zero density.
    const int k = network == Network::cellular ? cfg.cellular_subchannels : cfg.manet_subchannels;
    if (k == 0) return 0.0;
    return (network == Network::cellular ? cfg.cellular_density : cfg.manet_density) / k;
  }
  const double eta_delta = std::pow(cfg.power_ratio, cfg.delta());
  return network == Network::cellular
             ? (cfg.cellular_density + cfg.manet_density / eta_delta) / m
             : (eta_delta * cfg.cellular_density + cfg.manet_density) / m;
}

double sic_chi(double theta, double kappa, double delta) {
  if (!(kappa > 1.0)) throw InvalidParameter("SIC threshold factor kappa must exceed 1");
  if (!(theta >= 1.0)) throw InvalidParameter("SIR threshold must satisfy theta >= 1");
  return 1.0 - std::pow(theta * kappa, -delta);
}

double sic_chi(const ScenarioConfig& cfg) {
  return cfg.sic.enabled ? sic_chi(cfg.sir_threshold, cfg.sic.kappa, cfg.delta()) : 1.0;
}

double distance_pdf(double t, double base_station_density) {
  if (!(t >= 0.0)) throw DomainError("link-distance density needs t >= 0");
  if (!(base_station_density > 0.0)) throw InvalidParameter("lambda_b must be > 0");
  if (t == 0.0) return 0.0;
  const double y = 4.0 * pi * base_station_density * t * t;
  if (y > 700.0) return 0.0;
  return 8.0 * pi * base_station_density * t * special::exp_integral_e1(y);
}

double distance_tail_bound(double base_station_density, double tail) {
  return std::sqrt(-std::log(tail) / (4.0 * pi * base_station_density));
}

double mean_inverse_fade(const ScenarioConfig& cfg, Network network) {
  const auto& law = network == Network::cellular ? cfg.fading_cell : cfg.fading_manet;
  return law.moment(-cfg.delta());
}

double mean_square_link_distance(double base_station_density) {
  return 1.0 / (8.0 * pi * base_station_density);
}

namespace {

// E over the served-link fade of f(w).
template <class F>
double expect_over_fade(const channel::FadingModel& law, F&& f, const BoundOptions& options,
                        double tolerance) {
  if (law.is_deterministic()) return f(1.0);
  const double shape = law.order();
  const double w_max = boost::math::gamma_q_inv(shape, options.tail);
  const double log_norm = std::lgamma(shape);
  quadrature::Options q{tolerance, 16, 16, "fading expectation"};
  const double panel = w_max / 8.0;
  double total = 0.0;
  for (int i = 0; i < 8; ++i) {
    total += quadrature::integrate(
        [&](double w) {
          if (w <= 0.0) return 0.0;
          const double pdf = std::exp((shape - 1.0) * std::log(w) - w - log_norm);
          return pdf * f(w);
        },
        i * panel, (i + 1) * panel, q);
  }
  return total;
}

// E over (W, D) or W alone of f(w, d).
template <class F>
double expect_over_link(const ScenarioConfig& cfg, Network network, F&& f,
                        const BoundOptions& options) {
  if (network == Network::manet) {
    return expect_over_fade(
        cfg.fading_manet, [&](double w) { return f(w, cfg.manet_link_distance); }, options,
        options.abs_tolerance);
  }
  const double lambda_b = cfg.base_station_density;
  const double t_max = distance_tail_bound(lambda_b, options.tail);
  const double inner_tol = 0.25 * options.abs_tolerance;
  quadrature::Options q{0.5 * options.abs_tolerance, 16, 16, "link-distance expectation"};
  auto integrand = [&](double t) {
    const double density = distance_pdf(t, lambda_b);
    if (density == 0.0) return 0.0;
    return density *
           expect_over_fade(cfg.fading_cell, [&](double w) { return f(w, t); }, options,
                            inner_tol);
  };
  const double panel = t_max / 8.0;
  double total = 0.0;
  for (int i = 0; i < 8; ++i) total += quadrature::integrate(integrand, i * panel, (i + 1) * panel, q);
  return total;
}

}  // namespace

BoundPair expected_outage_bounds(const ScenarioConfig& cfg, Network network,
                                 const BoundOptions& options) {
  cfg.validate();
  const double lambda_eff = effective_density(cfg, network);
  if (lambda_eff == 0.0) return {0.0, 0.0};
  const double delta = cfg.delta();
  const double z = zeta(cfg.sir_threshold, delta, cfg.fading_interferer);
  const double chi = sic_chi(cfg);

  const double lower = expect_over_link(
      cfg, network,
      [&](double w, double d) {
        return outage_lower_sic(w, d, lambda_eff, z, delta, chi);
      },
      options);
  const double upper = expect_over_link(
      cfg, network,
      [&](double w, double d) { return outage_upper_sic(w, d, lambda_eff, z, delta, chi); },
      options);
  return {std::clamp(lower, 0.0, 1.0), std::clamp(std::max(upper, lower), 0.0, 1.0)};
}

std::pair<double, double> overlay_weights(const ScenarioConfig& cfg) {
  const double z = zeta(cfg.sir_threshold, cfg.delta(), cfg.fading_interferer);
  const double mu_o = z * mean_inverse_fade(cfg, Network::cellular) *
                      mean_square_link_distance(cfg.base_station_density);
  const double mu_tilde_o = z * mean_inverse_fade(cfg, Network::manet) *
                            cfg.manet_link_distance * cfg.manet_link_distance;
  return {mu_o, mu_tilde_o};
}

TradeoffWeights tradeoff_weights(const ScenarioConfig& cfg) {
  cfg.validate();
  const double delta = cfg.delta();
  const auto [mu_o, mu_tilde_o] = overlay_weights(cfg);

  TradeoffWeights weights;
  if (cfg.mode == SharingMode::overlay) {
    weights.mu = mu_o;
    weights.mu_tilde = mu_tilde_o;
    weights.limited = OutageLimited::both;
  } else {
    const double eta_delta = std::pow(cfg.power_ratio, delta);
    const double cellular_term = mu_o;
    const double manet_term = eta_delta * mu_tilde_o;
    weights.mu = std::max(cellular_term, manet_term);
    weights.mu_tilde = std::max(mu_tilde_o, mu_o / eta_delta);
    const double gap = std::abs(cellular_term - manet_term) / std::max(cellular_term, manet_term);
    if (gap <= 1e-12) {
      weights.limited = OutageLimited::both;
    } else {
      weights.limited = cellular_term > manet_term ? OutageLimited::cellular : OutageLimited::manet;
    }
  }
  if (cfg.sic.enabled) {
    const double cancelled = std::pow(cfg.sir_threshold * cfg.sic.kappa, -delta);
    weights.phi_low = 1.0 - cancelled;
    weights.phi_high = 2.0 / (2.0 - delta) - cancelled;
  }
  return weights;
}

double optimal_power_ratio(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto [mu_o, mu_tilde_o] = overlay_weights(cfg);
  return std::pow(mu_o / mu_tilde_o, 1.0 / cfg.delta());
}

CapacityLine capacity_line(const ScenarioConfig& cfg) {
  CapacityLine line;
  line.weights = tradeoff_weights(cfg);
  const double m_eps = cfg.total_subchannels * cfg.target_outage;
  line.m_eps = m_eps;
  line.rhs_low = m_eps / line.weights.phi_high;
  line.rhs_high = m_eps / line.weights.phi_low;
  line.c_cell_max_low_phi = line.rhs_high / line.weights.mu;
  line.c_cell_max_high_phi = line.rhs_low / line.weights.mu;
  line.c_manet_max_low_phi = line.rhs_high / line.weights.mu_tilde;
  line.c_manet_max_high_phi = line.rhs_low / line.weights.mu_tilde;
  return line;
}

std::pair<double, double> diversity_factor_bounds(int order, double delta) {
  if (order < 1) throw InvalidParameter("diversity order must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
  return {std::pow(order - 1.0, delta), std::pow(static_cast<double>(order), delta)};
}

double diversity_factor(int order, double delta) {
  if (order < 1) throw InvalidParameter("diversity order must be >= 1");
  return 1.0 / special::gamma_ratio(order, -delta);
}

std::pair<double, double> kershaw_bounds(double x, double s) {
  if (!(x > 0.0) || !(s > 0.0 && s < 1.0)) {
    throw InvalidParameter("Kershaw bounds need x > 0 and 0 < s < 1");
  }
  return {std::pow(x + 0.5 * s, 1.0 - s), std::pow(x - 0.5 + std::sqrt(s + 0.25), 1.0 - s)};
}

}  // namespace specshare::analytic
