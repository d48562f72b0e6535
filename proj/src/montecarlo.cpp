#include "specshare/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <omp.h>

#include "specshare/analytic.hpp"
#include "specshare/errors.hpp"

namespace specshare::montecarlo {

namespace pp = pointprocess;
using channel::Interferer;

namespace {

// Per-trial substream ids.
constexpr std::uint64_t kLinkStream = 1;
constexpr std::uint64_t kFieldStream = 2;
constexpr std::uint64_t kFadingStream = 3;

}  // namespace

OutageEstimate make_estimate(std::uint64_t outages, std::uint64_t trials, std::uint64_t seed) {
  OutageEstimate e;
  e.trials = trials;
  e.outages = outages;
  e.seed = seed;
  e.outage_fraction = trials == 0 ? 0.0 : static_cast<double>(outages) / trials;
  const double p = e.outage_fraction;
  e.ci_half_width = trials == 0 ? 0.0 : 1.96 * std::sqrt(p * (1.0 - p) / trials);
  e.reliable = outages >= 5;
  return e;
}

LinkDistance sample_link_distance(double base_station_density, RandomStream& rng) {
  if (!(base_station_density > 0.0)) {
    throw InvalidParameter("base-station density must be > 0");
  }
  const double z = std::sqrt(-std::log(rng.uniform()) /
                             (4.0 * std::numbers::pi * base_station_density));
  return {z * std::sqrt(rng.uniform()), z};
}

LinkDistance sample_link_distance_voronoi(double base_station_density, RandomStream& rng,
                                          double mean_count) {
  const pp::Region window({0.0, 0.0}, pp::radius_for_mean_count(mean_count, base_station_density));
  const pp::PointSet stations = pp::sample_ppp(base_station_density, window, rng);
  // With no other station in the window the inner disk is censored at the window edge.
  double nearest = window.radius();
  for (const auto& s : stations) nearest = std::min(nearest, pp::distance(s.position, {0.0, 0.0}));
  const double z = 0.5 * nearest;
  return {z * std::sqrt(rng.uniform()), z};
}

TrialPlan::TrialPlan(const ScenarioConfig& cfg, Network network) : cfg_(cfg), network_(network) {
  cfg_.validate();
  if (cfg_.mode == SharingMode::overlay) {
    if (network == Network::cellular && cfg_.cellular_subchannels > 0) {
      cellular_density_ = cfg_.cellular_density / cfg_.cellular_subchannels;
    } else if (network == Network::manet && cfg_.manet_subchannels > 0) {
      manet_density_ = cfg_.manet_density / cfg_.manet_subchannels;
    }
  } else {
    cellular_density_ = cfg_.cellular_density / cfg_.total_subchannels;
    manet_density_ = cfg_.manet_density / cfg_.total_subchannels;
  }
  const double total = cellular_density_ + manet_density_;
  interference_free_ = total == 0.0;
  if (!interference_free_) window_radius_ = pp::radius_for_mean_count(cfg_.window_mean_count, total);
}

NetworkRealization TrialPlan::realize(std::uint64_t seed, std::uint64_t trial) const {
  const RandomStream trial_rng = RandomStream(seed).derive(trial);
  RandomStream link_rng = trial_rng.derive(kLinkStream);
  RandomStream field_rng = trial_rng.derive(kFieldStream);
  RandomStream fading_rng = trial_rng.derive(kFadingStream);

  channel::LinkSample link;
  if (network_ == Network::cellular) {
    link.tx_rx_distance =
        cfg_.link_geometry == LinkGeometry::exact
            ? sample_link_distance(cfg_.base_station_density, link_rng).link
            : sample_link_distance_voronoi(cfg_.base_station_density, link_rng).link;
    link.signal_fade = channel::draw_fade(cfg_.fading_cell, link_rng);
    link.tx_power = cfg_.cellular_power();
  } else {
    link.tx_rx_distance = cfg_.manet_link_distance;
    link.signal_fade = channel::draw_fade(cfg_.fading_manet, link_rng);
    link.tx_power = ScenarioConfig::manet_power();
  }

  const pp::Region window({0.0, 0.0}, window_radius_);
  if (interference_free_) return {link, pp::PointSet({}, 0.0, window), window};

  pp::PointSet field = [&] {
    if (cfg_.mode == SharingMode::underlay) {
      return pp::superpose_and_mark(cellular_density_, manet_density_, window, field_rng,
                                    {cfg_.cellular_power(), ScenarioConfig::manet_power()});
    }
    return network_ == Network::cellular
               ? pp::sample_ppp(cellular_density_, window, field_rng, cfg_.cellular_power(),
                                pp::Origin::cellular)
               : pp::sample_ppp(manet_density_, window, field_rng, ScenarioConfig::manet_power(),
                                pp::Origin::manet);
  }();

  std::vector<pp::MarkedPoint> faded(field.begin(), field.end());
  for (auto& point : faded) point.fading_mark = channel::draw_fade(cfg_.fading_interferer, fading_rng);
  return {link, pp::PointSet(std::move(faded), field.generating_density(), window), window};
}

double TrialPlan::sir(std::uint64_t seed, std::uint64_t trial) const {
  const NetworkRealization r = realize(seed, trial);
  thread_local std::vector<Interferer> interferers;
  interferers.clear();
  for (const auto& p : r.interferers) {
    interferers.push_back({p.power_mark, p.fading_mark, pp::distance(p.position, r.window.center())});
  }
  return channel::sir_after_sic(r.typical_link, interferers, cfg_.sic, cfg_.path_loss_exponent);
}

bool TrialPlan::outage(std::uint64_t seed, std::uint64_t trial) const {
  if (interference_free_) return false;
  return sir(seed, trial) < cfg_.sir_threshold;
}

namespace {

void require_trials(std::uint64_t trials) {
  if (trials == 0) throw InvalidParameter("trial count must be >= 1");
}

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace

OutageEstimate estimate_outage(const ScenarioConfig& cfg, Network network, std::uint64_t trials,
                               std::uint64_t seed, int threads) {
  require_trials(trials);
  const TrialPlan plan(cfg, network);
  if (plan.interference_free()) return make_estimate(0, trials, seed);

  const auto n = static_cast<std::int64_t>(trials);
  std::uint64_t outages = 0;
#pragma omp parallel for reduction(+ : outages) schedule(dynamic, 512) num_threads(resolve_threads(threads))
  for (std::int64_t t = 0; t < n; ++t) {
    outages += plan.outage(seed, static_cast<std::uint64_t>(t)) ? 1 : 0;
  }
  return make_estimate(outages, trials, seed);
}

OutageEstimate estimate_outage_serial(const ScenarioConfig& cfg, Network network,
                                      std::uint64_t trials, std::uint64_t seed) {
  require_trials(trials);
  const TrialPlan plan(cfg, network);
  std::uint64_t outages = 0;
  for (std::uint64_t t = 0; t < trials; ++t) outages += plan.outage(seed, t) ? 1 : 0;
  return make_estimate(outages, trials, seed);
}

std::vector<std::uint8_t> outage_indicators(const ScenarioConfig& cfg, Network network,
                                            std::uint64_t trials, std::uint64_t seed,
                                            int threads) {
  require_trials(trials);
  const TrialPlan plan(cfg, network);
  std::vector<std::uint8_t> flags(trials, 0);
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 512) num_threads(resolve_threads(threads))
  for (std::int64_t t = 0; t < n; ++t) {
    flags[t] = plan.outage(seed, static_cast<std::uint64_t>(t)) ? 1 : 0;
  }
  return flags;
}

std::string_view to_string(SearchMode mode) noexcept {
  switch (mode) {
    case SearchMode::analytic_lower:
      return "analytic_lb";
    case SearchMode::analytic_upper:
      return "analytic_ub";
    case SearchMode::simulated:
      return "simulated";
  }
  return "analytic_lb";
}

namespace {

Network knob_network(Network network, SearchOptions::Knob knob) {
  switch (knob) {
    case SearchOptions::Knob::own:
      return network;
    case SearchOptions::Knob::cellular:
      return Network::cellular;
    case SearchOptions::Knob::manet:
      return Network::manet;
  }
  return network;
}

ScenarioConfig with_knob(const ScenarioConfig& cfg, Network knob, double density) {
  ScenarioConfig c = cfg;
  (knob == Network::cellular ? c.cellular_density : c.manet_density) = density;
  return c;
}

}  // namespace

double outage_at(const ScenarioConfig& cfg, Network network, double density,
                 const SearchOptions& options) {
  const ScenarioConfig c = with_knob(cfg, knob_network(network, options.knob), density);
  switch (options.mode) {
    case SearchMode::analytic_lower:
      return analytic::expected_outage_bounds(c, network).lower;
    case SearchMode::analytic_upper:
      return analytic::expected_outage_bounds(c, network).upper;
    case SearchMode::simulated:
      return estimate_outage(c, network, options.trials, options.seed, options.threads)
          .outage_fraction;
  }
  return 0.0;
}

CriticalDensity find_critical_density(const ScenarioConfig& cfg, Network network, double eps,
                                      const SearchOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameter("target outage must lie in (0, 1)");
  cfg.validate();
  const Network knob = knob_network(network, options.knob);

  CriticalDensity result;
  auto evaluate = [&](double density) {
    ++result.evaluations;
    return outage_at(cfg, network, density, options);
  };

  // Overlay outage of a network does not depend on the other network's density.
  const bool zero_at_origin = cfg.mode == SharingMode::overlay && knob == network;
  if (!zero_at_origin && evaluate(0.0) >= eps) {
    std::ostringstream msg;
    msg << to_string(network) << " outage already reaches " << eps << " with zero "
        << to_string(knob) << " density";
    throw NoSolution(msg.str());
  }

  // Starting bracket: analytic bounds sandwich the simulated critical density.
  double lo = 0.0;
  double hi = (knob == Network::cellular ? cfg.cellular_density : cfg.manet_density);
  if (options.mode == SearchMode::simulated) {
    SearchOptions analytic_options = options;
    analytic_options.tolerance = 1e-4;
    try {
      analytic_options.mode = SearchMode::analytic_lower;
      hi = 1.02 * find_critical_density(cfg, network, eps, analytic_options).density;
      analytic_options.mode = SearchMode::analytic_upper;
      lo = 0.98 * find_critical_density(cfg, network, eps, analytic_options).density;
    } catch (const NoSolution&) {
      lo = 0.0;
    }
    if (lo > 0.0 && evaluate(lo) >= eps) {
      hi = lo;
      lo = 0.0;
    }
  }
  if (!(hi > lo)) hi = lo > 0.0 ? 2.0 * lo : 1e-4;

  int expansions = 0;
  while (evaluate(hi) < eps) {
    lo = hi;
    hi *= 2.0;
    if (++expansions > 200 || !std::isfinite(hi)) {
      throw NoSolution(std::string(to_string(network)) + " outage never reaches the target");
    }
  }
  while (lo == 0.0) {
    const double candidate = 0.5 * hi;
    if (evaluate(candidate) < eps) {
      lo = candidate;
    } else {
      hi = candidate;
    }
    if (hi < 1e-300) break;
  }

  while (hi - lo > options.tolerance * hi && result.evaluations < options.max_evaluations) {
    const double mid = 0.5 * (lo + hi);
    if (evaluate(mid) < eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.converged = hi - lo <= options.tolerance * hi;
  result.bracket_low = lo;
  result.bracket_high = hi;
  result.density = 0.5 * (lo + hi);

  if (options.mode == SearchMode::simulated) {
    const ScenarioConfig c = with_knob(cfg, knob, result.density);
    const OutageEstimate e = estimate_outage(c, network, options.trials, options.seed, options.threads);
    ++result.evaluations;
    result.outage = e.outage_fraction;
    result.ci_half_width = e.ci_half_width;
    result.within_ci = std::abs(e.outage_fraction - eps) <= e.ci_half_width;
  } else {
    result.outage = evaluate(result.density);
    result.within_ci = true;
  }
  return result;
}

namespace {

TradeoffResult overlay_curve(const ScenarioConfig& cfg, double eps, const SearchOptions& options) {
  const int m = cfg.total_subchannels;
  if (m < 2) throw InvalidParameter("overlay needs at least two sub-channels");

  // One sub-channel for the network under test; the split of the rest is irrelevant.
  ScenarioConfig cell_cfg = cfg;
  cell_cfg.mode = SharingMode::overlay;
  cell_cfg.cellular_subchannels = 1;
  cell_cfg.manet_subchannels = m - 1;
  ScenarioConfig manet_cfg = cell_cfg;
  manet_cfg.cellular_subchannels = m - 1;
  manet_cfg.manet_subchannels = 1;

  SearchOptions own = options;
  own.knob = SearchOptions::Knob::own;
  const double per_channel_cell = find_critical_density(cell_cfg, Network::cellular, eps, own).density;
  const double per_channel_manet = find_critical_density(manet_cfg, Network::manet, eps, own).density;

  TradeoffResult result;
  for (int k = 0; k <= m; ++k) {
    CapacityPoint p;
    p.c_cell = (1.0 - eps) * k * per_channel_cell;
    p.c_manet = (1.0 - eps) * (m - k) * per_channel_manet;
    p.cellular_binding = k > 0;
    p.manet_binding = k < m;
    result.points.push_back(p);
  }
  return result;
}

TradeoffResult underlay_curve(const ScenarioConfig& cfg, double eps, const TradeoffSweep& sweep,
                              const SearchOptions& options) {
  TradeoffResult result;
  double manet_max = 0.0;
  if (sweep.kind == TradeoffSweep::Kind::capacity_fractions) {
    ScenarioConfig alone = cfg;
    alone.cellular_density = 0.0;
    SearchOptions own = options;
    own.knob = SearchOptions::Knob::own;
    manet_max = find_critical_density(alone, Network::manet, eps, own).density;
  }

  SearchOptions vary_cellular = options;
  vary_cellular.knob = SearchOptions::Knob::cellular;

  for (const double value : sweep.values) {
    const double manet_density =
        sweep.kind == TradeoffSweep::Kind::capacity_fractions ? value * manet_max : value;
    if (sweep.kind == TradeoffSweep::Kind::capacity_fractions && value == 1.0) {
      // MANET-only endpoint: its constraint is active at zero cellular density.
      result.points.push_back({0.0, (1.0 - eps) * manet_max, false, true});
      continue;
    }
    ScenarioConfig c = cfg;
    c.manet_density = manet_density;
    std::optional<double> cellular_limit;
    std::optional<double> manet_limit;
    try {
      cellular_limit = find_critical_density(c, Network::cellular, eps, vary_cellular).density;
      manet_limit = find_critical_density(c, Network::manet, eps, vary_cellular).density;
    } catch (const NoSolution& e) {
      std::ostringstream msg;
      msg << "MANET density " << manet_density << " infeasible: " << e.what();
      result.diagnostics.push_back(msg.str());
      continue;
    }
    const double limit = std::min(*cellular_limit, *manet_limit);
    const double slack = 4.0 * std::max(options.tolerance, 1e-12) * limit;
    CapacityPoint p;
    p.c_cell = (1.0 - eps) * limit;
    p.c_manet = (1.0 - eps) * manet_density;
    p.cellular_binding = *cellular_limit <= limit + slack;
    p.manet_binding = *manet_limit <= limit + slack;
    result.points.push_back(p);
  }
  return result;
}

}  // namespace

TradeoffResult tradeoff_curve(const ScenarioConfig& cfg, double eps, const TradeoffSweep& sweep,
                              const SearchOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameter("target outage must lie in (0, 1)");
  cfg.validate();
  for (const double v : sweep.values) {
    if (!(v >= 0.0) || (sweep.kind == TradeoffSweep::Kind::capacity_fractions && v > 1.0)) {
      throw InvalidParameter("sweep values must be non-negative (fractions at most 1)");
    }
  }
  return cfg.mode == SharingMode::overlay ? overlay_curve(cfg, eps, options)
                                          : underlay_curve(cfg, eps, sweep, options);
}

}  // namespace specshare::montecarlo
