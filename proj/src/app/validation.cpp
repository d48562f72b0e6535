#include "validation.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "config_io.hpp"
#include "specshare/analytic.hpp"
#include "specshare/errors.hpp"
#include "specshare/montecarlo.hpp"
#include "specshare/pointprocess.hpp"
#include "specshare/quadrature.hpp"

namespace specshare::app {
namespace {

namespace mc = montecarlo;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

struct Panel {
  SharingMode mode;
  Network network;
  const char* name;
};

constexpr Panel kPanels[] = {
    {SharingMode::overlay, Network::cellular, "overlay/cellular"},
    {SharingMode::overlay, Network::manet, "overlay/manet"},
    {SharingMode::underlay, Network::cellular, "underlay/cellular"},
    {SharingMode::underlay, Network::manet, "underlay/manet"},
};

constexpr double kLadderTop = 0.04;
constexpr std::uint64_t kTrials = 100000;

ScenarioConfig reference(SharingMode mode) {
  ScenarioConfig cfg;
  cfg.mode = mode;
  return cfg;
}

// Int over [0, t_max] of g(t) f_D(t) in equal panels.
double distance_moment(double lambda_b, double tail, double tolerance, double (*g)(double)) {
  const double t_max = analytic::distance_tail_bound(lambda_b, tail);
  const int panels = 16;
  const double h = t_max / panels;
  quadrature::Options q;
  q.abs_tolerance = tolerance / panels;
  q.max_depth = 20;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    total += quadrature::integrate(
        [&](double t) { return g(t) * analytic::distance_pdf(t, lambda_b); }, i * h, (i + 1) * h, q);
  }
  return total;
}

void check_sic_factor(CheckResult& r, std::uint64_t seed, int threads) {
  const auto start = Clock::now();
  const double chi = analytic::sic_chi(3.0, std::pow(10.0, 0.2), 0.5);
  const bool chi_ok = std::abs(chi - 0.54133) <= 1e-5;

  const ScenarioConfig cfg = reference(SharingMode::overlay);
  const double smallest = density_ladder(cfg, Network::cellular, kLadderTop).back();
  ScenarioConfig c = with_density(cfg, Network::cellular, smallest);
  c.sic.enabled = false;
  const auto off = mc::estimate_outage(c, Network::cellular, kTrials, seed, threads);
  c.sic.enabled = true;
  const auto on = mc::estimate_outage(c, Network::cellular, kTrials, seed, threads);
  const double ratio = on.outage_fraction / off.outage_fraction;
  const bool ratio_ok = std::abs(ratio / chi - 1.0) <= 0.10;
  const double elapsed = seconds_since(start);

  r.passed = chi_ok && ratio_ok && elapsed < 120.0;
  r.detail = "chi=" + num(chi, 7) + " vs pinned 0.54133 +- 1e-5 (" + (chi_ok ? "ok" : "off by " + num(chi - 0.54133, 2)) +
             "); sim SIC/no-SIC at density " + num(smallest, 4) + " = " + num(ratio, 4) +
             " (within 10% of chi: " + (ratio_ok ? "yes" : "no") + "); " + num(elapsed, 3) + " s";
}

void check_distance_law(CheckResult& r, std::uint64_t seed) {
  bool ok = true;
  std::ostringstream d;
  for (const double lambda_b : {1e-4, 1e-3, 1e-2}) {
    const double mass = distance_moment(lambda_b, 1e-13, 1e-12, [](double) { return 1.0; });
    const double exact = 1.0 / (8.0 * std::numbers::pi * lambda_b);
    const double second =
        distance_moment(lambda_b, 1e-13, 1e-9 * exact, [](double t) { return t * t; });
    const double mass_err = std::abs(mass - 1.0);
    const double second_err = std::abs(second / exact - 1.0);
    ok = ok && mass_err < 1e-8 && second_err < 1e-6;
    d << "lambda_b=" << lambda_b << ": |int f-1|=" << num(mass_err, 2)
      << " rel E[D^2] err=" << num(second_err, 2) << "; ";
  }

  RandomStream rng(seed);
  const int n = 1000000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d2 = std::pow(mc::sample_link_distance(1e-3, rng).link, 2);
    sum += d2;
    sum_sq += d2 * d2;
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sum_sq - n * mean * mean) / (n - 1));
  const double z = std::abs(mean - 39.7887) / (sd / std::sqrt(double(n)));
  ok = ok && z <= 3.0;
  d << "sampled E[D^2]=" << num(mean, 6) << " (" << num(z, 3) << " sigma from 39.7887)";
  r.passed = ok;
  r.detail = d.str();
}

void check_sandwich(CheckResult& r, std::uint64_t seed, int threads) {
  const auto start = Clock::now();
  bool ok = true;
  std::ostringstream d;
  for (const Panel& panel : kPanels) {
    const ScenarioConfig cfg = reference(panel.mode);
    const auto ladder = density_ladder(cfg, panel.network, kLadderTop);
    d << panel.name << " sim/lb:";
    double last_ratio = 0.0;
    for (const double density : ladder) {
      const ScenarioConfig c = with_density(cfg, panel.network, density);
      const auto b = analytic::expected_outage_bounds(c, panel.network);
      const auto e = mc::estimate_outage(c, panel.network, kTrials, seed, threads);
      const bool in_range = b.lower >= 1e-3 && b.lower <= 5e-2;
      const bool inside = e.outage_fraction >= b.lower - e.ci_half_width &&
                          e.outage_fraction <= b.upper + e.ci_half_width;
      if (!in_range || !inside) {
        ok = false;
        d << " [density " << num(density, 4) << " lb=" << num(b.lower, 4) << " ub=" << num(b.upper, 4)
          << " sim=" << num(e.outage_fraction, 4) << " outside]";
      }
      last_ratio = e.outage_fraction / b.lower;
      d << ' ' << num(last_ratio, 3);
    }
    ok = ok && last_ratio <= 1.25;
    d << "; ";
  }
  const double elapsed = seconds_since(start);
  ok = ok && elapsed < 600.0;
  r.passed = ok;
  d << num(elapsed, 3) << " s";
  r.detail = d.str();
}

void check_tradeoff(CheckResult& r, std::uint64_t seed, int threads) {
  const double eps = 0.01;
  mc::SearchOptions options;
  options.mode = mc::SearchMode::simulated;
  options.tolerance = 2e-3;
  options.trials = kTrials;
  options.seed = seed;
  options.threads = threads;
  mc::TradeoffSweep sweep;
  sweep.values = {0.0, 0.5, 1.0};
  // Outage CI at eps, as a relative slack on capacity (outage is linear in density here).
  const double slack = 1.96 * std::sqrt(eps * (1.0 - eps) / double(kTrials)) / eps;

  bool ok = true;
  std::ostringstream d;
  for (const bool sic : {false, true}) {
    for (const SharingMode mode : {SharingMode::overlay, SharingMode::underlay}) {
      ScenarioConfig cfg = reference(mode);
      cfg.sic.enabled = sic;
      cfg.target_outage = eps;
      const analytic::CapacityLine line = analytic::capacity_line(cfg);
      const auto result = mc::tradeoff_curve(cfg, eps, sweep, options);
      if (!result.diagnostics.empty() || result.points.empty()) ok = false;
      double lo = INFINITY;
      double hi = -INFINITY;
      for (const auto& p : result.points) {
        const double s = (line.weights.mu_tilde * p.c_manet + line.weights.mu * p.c_cell) / line.m_eps;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        if (!sic) {
          ok = ok && std::abs(s - 1.0) <= 0.15;
        } else {
          ok = ok && s >= line.rhs_low / line.m_eps * (1.0 - slack) &&
               s <= line.rhs_high / line.m_eps * (1.0 + slack);
        }
      }
      d << to_string(mode) << (sic ? "+SIC" : "") << ": (mu~C~+muC)/(M eps) in [" << num(lo, 4)
        << ", " << num(hi, 4) << "]";
      if (sic) {
        d << " vs [" << num(line.rhs_low / line.m_eps, 4) << ", " << num(line.rhs_high / line.m_eps, 4)
          << "] +- " << num(100 * slack, 2) << "%";
      }
      d << "; ";
    }
  }
  r.passed = ok;
  r.detail = d.str();
}

void check_region(CheckResult& r, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto fading = [&] {
    const int pick = static_cast<int>(u(gen) * 3.0);
    if (pick == 0) return channel::FadingModel::unit();
    if (pick == 1) return channel::FadingModel::rayleigh();
    return channel::FadingModel::diversity(2 + static_cast<int>(u(gen) * 4.0));
  };
  bool ok = true;
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    ScenarioConfig cfg;
    cfg.sir_threshold = std::pow(10.0, u(gen));
    cfg.path_loss_exponent = 2.5 + 3.5 * u(gen);
    cfg.base_station_density = std::pow(10.0, -4.0 + 2.0 * u(gen));
    cfg.manet_link_distance = 1.0 + 49.0 * u(gen);
    cfg.power_ratio = std::pow(10.0, (-10.0 + 20.0 * u(gen)) / 10.0);
    cfg.sic.enabled = u(gen) < 0.5;
    cfg.fading_cell = fading();
    cfg.fading_manet = fading();
    cfg.fading_interferer = fading();

    cfg.mode = SharingMode::overlay;
    const auto over = analytic::tradeoff_weights(cfg);
    cfg.mode = SharingMode::underlay;
    const auto under = analytic::tradeoff_weights(cfg);
    ok = ok && under.mu >= over.mu && under.mu_tilde >= over.mu_tilde;

    cfg.power_ratio = analytic::optimal_power_ratio(cfg);
    const auto matched = analytic::tradeoff_weights(cfg);
    const double e1 = std::abs(matched.mu / over.mu - 1.0);
    const double e2 = std::abs(matched.mu_tilde / over.mu_tilde - 1.0);
    worst = std::max({worst, e1, e2});
  }
  ok = ok && worst <= 1e-12;
  r.passed = ok;
  r.detail = "20 draws: underlay weights dominate overlay; at eta* worst relative gap " + num(worst, 3);
}

void check_degenerate(CheckResult& r, std::uint64_t seed, int threads) {
  ScenarioConfig under = reference(SharingMode::underlay);
  under.cellular_density = 3e-4;
  under.manet_density = 0.0;
  ScenarioConfig over = under;
  over.mode = SharingMode::overlay;
  over.cellular_subchannels = over.total_subchannels;
  over.manet_subchannels = 0;

  const auto bu = analytic::expected_outage_bounds(under, Network::cellular);
  const auto bo = analytic::expected_outage_bounds(over, Network::cellular);
  const double gap = std::max(std::abs(bu.lower - bo.lower), std::abs(bu.upper - bo.upper));
  const auto iu = mc::outage_indicators(under, Network::cellular, kTrials, seed, threads);
  const auto io = mc::outage_indicators(over, Network::cellular, kTrials, seed, threads);
  const auto outages = std::count(iu.begin(), iu.end(), std::uint8_t{1});
  r.passed = gap <= 1e-12 && iu == io;
  r.detail = "bound gap " + num(gap, 3) + "; per-trial outcomes " + (iu == io ? "identical" : "differ") +
             " (" + std::to_string(outages) + " outages in " + std::to_string(kTrials) + " trials)";
}

void check_kershaw(CheckResult& r) {
  bool ok = true;
  for (int l = 1; l <= 12; ++l) {
    for (int k = 1; k <= 9; ++k) {
      const double delta = 0.1 * k;
      const double direct = std::exp(std::lgamma(double(l)) - std::lgamma(l - delta));
      const double lib = analytic::diversity_factor(l, delta);
      const auto [lo, hi] = analytic::diversity_factor_bounds(l, delta);
      ok = ok && std::pow(l - 1.0, delta) <= direct && direct <= std::pow(double(l), delta);
      ok = ok && lo <= lib && lib <= hi && std::abs(lib / direct - 1.0) < 1e-13;
    }
  }
  const double exact = analytic::diversity_factor(2, 0.5);
  ok = ok && std::abs(exact - 1.12838) <= 1e-5;
  r.passed = ok;
  r.detail = "window holds for L=1..12, delta=0.1..0.9; Gamma(2)/Gamma(1.5)=" + num(exact, 7);
}

void check_mark_law(CheckResult& r, std::uint64_t seed) {
  const double manet = 1e-4;
  const double cellular = 3.0 * manet;
  const pointprocess::Region region({0.0, 0.0},
                                    pointprocess::radius_for_mean_count(1e5, cellular + manet));
  RandomStream rng(seed);
  const auto points = pointprocess::superpose_and_mark(cellular, manet, region, rng);
  const auto n = points.size();
  const auto k = static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const auto& p) {
    return p.origin == pointprocess::Origin::cellular;
  }));
  const boost::math::binomial_distribution<double> law(double(n), 0.75);
  const double lower_tail = boost::math::cdf(law, double(k));
  const double upper_tail = k == 0 ? 1.0 : boost::math::cdf(boost::math::complement(law, double(k - 1)));
  const double p_value = std::min(1.0, 2.0 * std::min(lower_tail, upper_tail));
  r.passed = p_value >= 1e-3;
  r.detail = std::to_string(k) + " of " + std::to_string(n) + " points cellular (fraction " +
             num(double(k) / double(n), 5) + "), two-sided binomial p=" + num(p_value, 3);
}

void check_bisection(CheckResult& r) {
  ScenarioConfig cfg = reference(SharingMode::overlay);
  cfg.fading_manet = channel::FadingModel::unit();
  const double delta = cfg.delta();
  // Rayleigh interferers: E[G^delta] = Gamma(1 + delta).
  const double zeta = std::numbers::pi * std::pow(cfg.sir_threshold, delta) * std::tgamma(1.0 + delta);
  const double d2 = cfg.manet_link_distance * cfg.manet_link_distance;
  mc::SearchOptions options;
  options.mode = mc::SearchMode::analytic_lower;
  options.tolerance = 1e-9;
  double worst = 0.0;
  for (const double eps : {1e-3, 1e-2, 5e-2, 0.2}) {
    const double closed = cfg.manet_subchannels * -std::log1p(-eps) / (zeta * d2);
    const double found = mc::find_critical_density(cfg, Network::manet, eps, options).density;
    worst = std::max(worst, std::abs(found / closed - 1.0));
  }
  r.passed = worst <= 1e-9;
  r.detail = "worst relative gap to K~(-ln(1-eps))/(zeta d~^2): " + num(worst, 3);
}

void check_determinism(CheckResult& r, std::uint64_t seed) {
  OutageArgs args;
  args.densities = {0.0, 1e-4, 4e-4};
  args.trials = 20000;
  args.seed = seed;
  std::vector<std::string> outputs;
  bool exits_ok = true;
  const int all = resolve_threads(0);
  for (const int threads : {1, 4, all}) {
    args.threads = threads;
    for (int rep = 0; rep < 2; ++rep) {
      std::ostringstream out;
      std::ostringstream err;
      exits_ok = exits_ok && cmd_outage(args, out, err) == exit_ok;
      outputs.push_back(out.str());
    }
  }
  const bool same = std::all_of(outputs.begin(), outputs.end(),
                                [&](const std::string& s) { return s == outputs.front(); });
  r.passed = exits_ok && same && !outputs.front().empty();
  r.detail = std::string("cmd_outage CSV under 1, 4 and ") + std::to_string(all) + " threads, twice each: " +
             (same ? "byte-identical" : "differs") + " (" + std::to_string(outputs.front().size()) + " bytes)";
}

}  // namespace

ScenarioConfig with_density(const ScenarioConfig& cfg, Network network, double density) {
  ScenarioConfig c = cfg;
  if (c.mode == SharingMode::underlay) {
    c.cellular_density = 0.5 * density;
    c.manet_density = 0.5 * density;
  } else if (network == Network::cellular) {
    c.cellular_density = density;
  } else {
    c.manet_density = density;
  }
  return c;
}

std::vector<double> density_ladder(const ScenarioConfig& cfg, Network network, double top) {
  auto lower = [&](double density) {
    return analytic::expected_outage_bounds(with_density(cfg, network, density), network).lower - top;
  };
  double hi = 1e-6;
  while (lower(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1.0) throw NoSolution("lower-bound outage never reaches the ladder top");
  }
  std::uintmax_t iterations = 100;
  const auto [a, b] = boost::math::tools::toms748_solve(
      lower, 0.5 * hi, hi, boost::math::tools::eps_tolerance<double>(40), iterations);
  const double first = 0.5 * (a + b);
  return {first, first * std::pow(10.0, -1.0 / 3.0), first * std::pow(10.0, -2.0 / 3.0), 0.1 * first};
}

std::vector<CheckResult> run_checks(const std::vector<Check>& checks,
                                    const std::function<void(const CheckResult&)>& report) {
  std::vector<CheckResult> results;
  for (const auto& check : checks) {
    CheckResult r;
    r.name = check.name;
    const auto start = Clock::now();
    try {
      check.run(r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("threw: ") + e.what();
    }
    r.seconds = seconds_since(start);
    if (report) report(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<Check> acceptance_checks(std::uint64_t seed, int threads) {
  return {
      {"1 sic-factor", [=](CheckResult& r) { check_sic_factor(r, seed, threads); }},
      {"2 distance-law", [=](CheckResult& r) { check_distance_law(r, seed); }},
      {"3 bound-sandwich", [=](CheckResult& r) { check_sandwich(r, seed, threads); }},
      {"4 tradeoff-line", [=](CheckResult& r) { check_tradeoff(r, seed, threads); }},
      {"5 region-containment", [=](CheckResult& r) { check_region(r, seed); }},
      {"6 degenerate-equivalence", [=](CheckResult& r) { check_degenerate(r, seed, threads); }},
      {"7 kershaw-diversity", [](CheckResult& r) { check_kershaw(r); }},
      {"8 mark-law", [=](CheckResult& r) { check_mark_law(r, seed); }},
      {"9 bisection-inversion", [](CheckResult& r) { check_bisection(r); }},
      {"10 determinism", [=](CheckResult& r) { check_determinism(r, seed); }},
  };
}

std::vector<Check> fast_checks(const ScenarioConfig& cfg, std::uint64_t seed, int threads) {
  std::vector<Check> checks;
  checks.push_back({"config-roundtrip", [cfg](CheckResult& r) {
                      const ScenarioConfig back = parse_config(serialize_config(cfg));
                      r.passed = back == cfg && config_digest(back) == config_digest(cfg);
                      r.detail = "digest " + config_digest(cfg).substr(0, 16);
                    }});
  checks.push_back({"sic-factor-range", [cfg](CheckResult& r) {
                      const double chi = analytic::sic_chi(cfg);
                      r.passed = chi > 0.0 && chi <= 1.0;
                      r.detail = "chi=" + num(chi, 6);
                    }});
  checks.push_back({"distance-law-mass", [cfg](CheckResult& r) {
                      const double mass =
                          distance_moment(cfg.base_station_density, 1e-13, 1e-12, [](double) { return 1.0; });
                      r.passed = std::abs(mass - 1.0) < 1e-8;
                      r.detail = "|int f_D - 1| = " + num(std::abs(mass - 1.0), 3);
                    }});
  checks.push_back({"bound-sandwich", [cfg, seed, threads](CheckResult& r) {
                      bool ok = true;
                      std::ostringstream d;
                      for (const Network net : {Network::cellular, Network::manet}) {
                        const auto b = analytic::expected_outage_bounds(cfg, net);
                        const auto e = mc::estimate_outage(cfg, net, 20000, seed, threads);
                        ok = ok && 0.0 <= b.lower && b.lower <= b.upper && b.upper <= 1.0 &&
                             e.outage_fraction >= b.lower - e.ci_half_width &&
                             e.outage_fraction <= b.upper + e.ci_half_width;
                        d << to_string(net) << ": " << num(b.lower, 4) << " <= " << num(e.outage_fraction, 4)
                          << " <= " << num(b.upper, 4) << "; ";
                      }
                      r.passed = ok;
                      r.detail = d.str();
                    }});
  checks.push_back({"sic-monotone", [cfg, seed, threads](CheckResult& r) {
                      ScenarioConfig off = cfg;
                      off.sic.enabled = false;
                      ScenarioConfig on = cfg;
                      on.sic.enabled = true;
                      bool ok = true;
                      for (const Network net : {Network::cellular, Network::manet}) {
                        const auto a = mc::outage_indicators(off, net, 10000, seed, threads);
                        const auto b = mc::outage_indicators(on, net, 10000, seed, threads);
                        for (std::size_t i = 0; i < a.size(); ++i) ok = ok && b[i] <= a[i];
                      }
                      r.passed = ok;
                      r.detail = "SIC never adds an outage on paired trials";
                    }});
  checks.push_back({"thread-determinism", [cfg, seed, threads](CheckResult& r) {
                      const auto serial = mc::estimate_outage_serial(cfg, Network::cellular, 5000, seed);
                      const auto one = mc::estimate_outage(cfg, Network::cellular, 5000, seed, 1);
                      const auto many = mc::estimate_outage(cfg, Network::cellular, 5000, seed,
                                                            std::max(threads, 3));
                      r.passed = serial.outages == one.outages && one.outages == many.outages;
                      r.detail = std::to_string(serial.outages) + " outages in 5000 trials, every run";
                    }});
  checks.push_back({"region-containment", [cfg](CheckResult& r) {
                      ScenarioConfig c = cfg;
                      c.mode = SharingMode::overlay;
                      const auto over = analytic::tradeoff_weights(c);
                      c.mode = SharingMode::underlay;
                      const auto under = analytic::tradeoff_weights(c);
                      r.passed = under.mu >= over.mu && under.mu_tilde >= over.mu_tilde;
                      r.detail = "mu_u/mu_o=" + num(under.mu / over.mu, 5) +
                                 " mu~_u/mu~_o=" + num(under.mu_tilde / over.mu_tilde, 5);
                    }});
  checks.push_back({"kershaw-diversity", [](CheckResult& r) { check_kershaw(r); }});
  checks.push_back({"mark-law", [seed](CheckResult& r) { check_mark_law(r, seed); }});
  checks.push_back({"bisection-inversion", [](CheckResult& r) { check_bisection(r); }});
  return checks;
}

}  // namespace specshare::app
