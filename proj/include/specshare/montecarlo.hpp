#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specshare/channel.hpp"
#include "specshare/pointprocess.hpp"
#include "specshare/random_stream.hpp"
#include "specshare/scenario.hpp"

namespace specshare::montecarlo {

struct OutageEstimate {
  double outage_fraction = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t outages = 0;
  double ci_half_width = 0.0;  // 1.96 sqrt(p (1 - p) / trials)
  std::uint64_t seed = 0;
  // False when fewer than 5 outages were observed; the normal CI is then meaningless.
  bool reliable = true;
};

OutageEstimate make_estimate(std::uint64_t outages, std::uint64_t trials, std::uint64_t seed);

struct LinkDistance {
  double link = 0.0;          // D
  double inner_radius = 0.0;  // Z, radius of the inner disk of the serving cell
};

/// Exact draw of (D, Z): Z^2 is exponential with rate 4 pi lambda_b, and D is
/// uniform in area within the disk of radius Z.
LinkDistance sample_link_distance(double base_station_density, RandomStream& rng);

/// Same law realized geometrically: a base-station PPP with `mean_count`
/// stations around the serving station at the origin; Z is half the distance
/// to the nearest other station. Used to cross-check sample_link_distance.
LinkDistance sample_link_distance_voronoi(double base_station_density, RandomStream& rng,
                                          double mean_count = 200.0);

// One sampled interferer field with the typical link; the receiver sits at the window center.
struct NetworkRealization {
  channel::LinkSample typical_link;
  pointprocess::PointSet interferers;
  pointprocess::Region window;
};

// Precomputed per-(config, network) quantities shared read-only by all trials.
class TrialPlan {
 public:
  TrialPlan(const ScenarioConfig& cfg, Network network);

  [[nodiscard]] const ScenarioConfig& config() const noexcept { return cfg_; }
  [[nodiscard]] Network network() const noexcept { return network_; }
  // True when no interferer can exist (zero density); every trial is then a success.
  [[nodiscard]] bool interference_free() const noexcept { return interference_free_; }

  [[nodiscard]] NetworkRealization realize(std::uint64_t seed, std::uint64_t trial) const;
  [[nodiscard]] bool outage(std::uint64_t seed, std::uint64_t trial) const;
  [[nodiscard]] double sir(std::uint64_t seed, std::uint64_t trial) const;

 private:
  ScenarioConfig cfg_;
  Network network_;
  double cellular_density_ = 0.0;  // per sub-channel
  double manet_density_ = 0.0;     // per sub-channel
  bool interference_free_ = false;
  double window_radius_ = 1.0;
};

/// Fraction of trials in outage. Trial t draws everything from
/// RandomStream(seed).derive(t), and outage counts are summed as integers, so
/// the result is bit-identical for any thread count. `threads` <= 0 uses the
/// OpenMP default.
OutageEstimate estimate_outage(const ScenarioConfig& cfg, Network network, std::uint64_t trials,
                               std::uint64_t seed, int threads = 0);

// Single-threaded reference for estimate_outage; same per-trial streams.
OutageEstimate estimate_outage_serial(const ScenarioConfig& cfg, Network network,
                                      std::uint64_t trials, std::uint64_t seed);

// Per-trial outage indicator and SIR for a paired comparison between two configs.
std::vector<std::uint8_t> outage_indicators(const ScenarioConfig& cfg, Network network,
                                            std::uint64_t trials, std::uint64_t seed,
                                            int threads = 0);

enum class SearchMode { analytic_lower, analytic_upper, simulated };

std::string_view to_string(SearchMode mode) noexcept;

struct SearchOptions {
  SearchMode mode = SearchMode::analytic_lower;
  // Density varied by the search; the outage constraint is always that of the
  // `network` argument. Defaults to the network's own transmitter density.
  enum class Knob { own, cellular, manet } knob = Knob::own;
  double tolerance = 1e-9;  // relative width of the final density bracket
  int max_evaluations = 200;
  // Simulated mode. Every evaluation reuses the same seed (common random numbers).
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct CriticalDensity {
  double density = 0.0;         // lambda_eps
  double outage = 0.0;          // outage at `density` under the search mode
  double ci_half_width = 0.0;   // simulated mode only
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  int evaluations = 0;
  bool converged = false;       // bracket reached the tolerance
  bool within_ci = false;       // simulated: |outage - eps| <= ci_half_width at the result
};

/// Density at which the outage of `network` equals eps, by bisection on the
/// knob density (outage is increasing in it). The upper bracket is grown
/// geometrically; throws NoSolution if eps is never reached or the outage at
/// zero knob density already exceeds eps.
CriticalDensity find_critical_density(const ScenarioConfig& cfg, Network network, double eps,
                                      const SearchOptions& options = {});

// Outage of `network` at the given knob density under the search mode.
double outage_at(const ScenarioConfig& cfg, Network network, double density,
                 const SearchOptions& options);

struct CapacityPoint {
  double c_cell = 0.0;   // (1 - eps) lambda_eps, m^-2
  double c_manet = 0.0;  // (1 - eps) lambda~_eps
  bool cellular_binding = false;
  bool manet_binding = false;
};

struct TradeoffSweep {
  enum class Kind {
    manet_densities,     // absolute MANET densities
    capacity_fractions,  // fractions of the MANET-only critical density
  } kind = Kind::capacity_fractions;
  std::vector<double> values{0.0, 0.25, 0.5, 0.75, 1.0};
};

struct TradeoffResult {
  std::vector<CapacityPoint> points;
  std::vector<std::string> diagnostics;  // omitted (infeasible) sweep points
};

/// Capacity pairs at target outage eps.
///
/// Overlay: one point per split K = 0..M of the sub-channels (the sweep is not
/// used). Each network's outage depends only on its per-sub-channel density, so
/// lambda_eps(K) = K * lambda_eps(1) and a single search per network suffices.
///
/// Underlay: for each MANET density of the sweep, the largest cellular density
/// meeting both outage constraints.
TradeoffResult tradeoff_curve(const ScenarioConfig& cfg, double eps, const TradeoffSweep& sweep,
                              const SearchOptions& options);

}  // namespace specshare::montecarlo
