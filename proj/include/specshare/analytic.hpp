#pragma once

#include <utility>

#include "specshare/channel.hpp"
#include "specshare/quadrature.hpp"
#include "specshare/scenario.hpp"
#include "specshare/special.hpp"

// Closed-form outage bounds, link-distance law and capacity trade-off weights.
namespace specshare::analytic {

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
};

// Which coexisting network attains its capacity with the outage constraint active.
enum class OutageLimited { cellular, manet, both };

std::string_view to_string(OutageLimited limited) noexcept;

struct TradeoffWeights {
  double mu = 0.0;        // weight on the cellular capacity, m^2
  double mu_tilde = 0.0;  // weight on the MANET capacity, m^2
  double phi_low = 1.0;
  double phi_high = 1.0;
  OutageLimited limited = OutageLimited::both;
};

// The capacity line mu~ C~ + mu C = M eps / phi, with phi in [phi_low, phi_high].
struct CapacityLine {
  TradeoffWeights weights;
  double rhs_low = 0.0;   // M eps / phi_high
  double rhs_high = 0.0;  // M eps / phi_low
  // Axis intercepts for phi = phi_low (the larger region) and phi = phi_high.
  double c_cell_max_low_phi = 0.0;
  double c_cell_max_high_phi = 0.0;
  double c_manet_max_low_phi = 0.0;
  double c_manet_max_high_phi = 0.0;
  double m_eps = 0.0;  // M eps

  // Cellular capacity on the line for a given MANET capacity (clamped at 0).
  [[nodiscard]] double cellular_capacity(double c_manet, double phi) const;
};

// pi theta^delta E[G^delta]. Throws InvalidParameter for theta < 1 or delta outside (0, 1).
double zeta(double theta, double delta, const channel::FadingModel& fading_interferer);

// 1 - exp(-zeta lambda w^-delta d^2)
double outage_lower(double w, double d, double lambda_eff, double zeta, double delta);

/// Chebyshev correction factor in [0, 1]. With x = zeta d^2 w^-delta lambda:
/// 0 when delta x / (1 - delta) >= 1, otherwise
/// [1 - (delta / (2 - delta)) x / (1 - delta x / (1 - delta))^2]^+.
double xi(double w, double d, double lambda_eff, double zeta, double delta);

// 1 - xi exp(-zeta lambda w^-delta d^2); never below outage_lower.
double outage_upper(double w, double d, double lambda_eff, double zeta, double delta);

// Same bounds with the strong-interferer exponent scaled by the SIC factor chi.
// xi keeps the unscaled zeta because cancellation leaves the weak interferers untouched.
double outage_lower_sic(double w, double d, double lambda_eff, double zeta, double delta,
                        double chi);
double outage_upper_sic(double w, double d, double lambda_eff, double zeta, double delta,
                        double chi);

/// Density of interferers seen by a typical receiver of `network`, weighted by
/// relative transmit power:
///   overlay:  lambda / K (cellular), lambda~ / K~ (MANET)
///   underlay: (lambda + eta^-delta lambda~) / M (cellular),
///             (eta^delta lambda + lambda~) / M (MANET).
double effective_density(const ScenarioConfig& cfg, Network network);

// 1 - theta^-delta kappa^-delta. Throws InvalidParameter for kappa <= 1.
double sic_chi(double theta, double kappa, double delta);
// chi for the config, 1 when SIC is disabled.
double sic_chi(const ScenarioConfig& cfg);

// Density of the inner-cell uplink distance, -8 pi lambda_b t Ei(-4 pi lambda_b t^2).
double distance_pdf(double t, double base_station_density);

// Radius beyond which the link-distance tail mass is below `tail` (uses P(D > t) <= exp(-4 pi lambda_b t^2)).
double distance_tail_bound(double base_station_density, double tail = 1e-8);

using special::exp_integral_e1;

struct BoundOptions {
  double abs_tolerance = 1e-10;
  double tail = 1e-8;  // truncation mass for the D and fading integrals
};

/// E[P_l] and E[P_u] over the served-link law: fading W (or W~) and, for the
/// cellular network, the link distance D with density distance_pdf. The MANET
/// link distance is fixed. Includes the SIC factor when enabled.
BoundPair expected_outage_bounds(const ScenarioConfig& cfg, Network network,
                                 const BoundOptions& options = {});

// E[W^-delta] for the served link of `network`.
double mean_inverse_fade(const ScenarioConfig& cfg, Network network);

// Mean squared cellular link distance, 1 / (8 pi lambda_b).
double mean_square_link_distance(double base_station_density);

// (mu_o, mu~_o): overlay weights, independent of the sub-channel split.
std::pair<double, double> overlay_weights(const ScenarioConfig& cfg);

// Weights of the small-outage capacity line and the phi interval.
TradeoffWeights tradeoff_weights(const ScenarioConfig& cfg);

// Power ratio eta* = (mu_o / mu~_o)^(1/delta) at which underlay matches overlay.
double optimal_power_ratio(const ScenarioConfig& cfg);

CapacityLine capacity_line(const ScenarioConfig& cfg);

// ((L - 1)^delta, L^delta): window for the diversity capacity multiplier.
std::pair<double, double> diversity_factor_bounds(int order, double delta);

// Exact multiplier Gamma(L) / Gamma(L - delta) relative to unit fading.
double diversity_factor(int order, double delta);

/// Two-sided bound on Gamma(x + 1) / Gamma(x + s) for x >= 1, 0 < s < 1:
/// (x + s/2)^(1-s) < ratio < (x - 1/2 + sqrt(s + 1/4))^(1-s).
std::pair<double, double> kershaw_bounds(double x, double s);

}  // namespace specshare::analytic
