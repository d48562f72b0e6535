#include "commands.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "config_io.hpp"
#include "manifest.hpp"
#include "specshare/analytic.hpp"
#include "specshare/errors.hpp"
#include "validation.hpp"

namespace specshare::app {
namespace {

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InvalidParameter& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return exit_invalid_config;
  } catch (const NoSolution& e) {
    err << "error: no solution: " << e.what() << '\n';
    return exit_numerical_failure;
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return exit_numerical_failure;
  } catch (const DomainError& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return exit_numerical_failure;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return exit_io_failure;
  }
}

void emit(const CsvTable& table, const RunManifest& manifest, const std::string& path,
          std::ostream& out) {
  if (path.empty()) {
    table.write(out, header_comment(manifest));
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot write " + path);
  table.write(file, header_comment(manifest));
  file.close();
  if (!file) throw std::ios_base::failure("failed writing " + path);
  write_sidecar(path, manifest);
}

std::string binding_label(bool cellular, bool manet) {
  if (cellular && manet) return "both";
  if (cellular) return "cellular";
  if (manet) return "manet";
  return "none";
}

double parse_number(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidParameter("not a number: '" + std::string(text) + "'");
  }
  return v;
}

double resolve_epsilon(const ScenarioConfig& cfg, const std::optional<double>& eps) {
  const double e = eps.value_or(cfg.target_outage);
  if (!(e > 0.0 && e < 1.0)) throw InvalidParameter("epsilon must lie in (0, 1)");
  return e;
}

}  // namespace

int resolve_threads(int requested) {
  int threads = requested > 0 ? requested : omp_get_max_threads();
  if (const char* env = std::getenv("SPECSHARE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) threads = std::min(threads, cap);
  }
  return std::max(threads, 1);
}

ScenarioConfig resolve_config(const std::string& path) {
  return path.empty() ? ScenarioConfig{} : load_config(path);
}

CsvTable outage_table(const ScenarioConfig& cfg, const OutageArgs& args) {
  if (args.trials == 0) throw InvalidParameter("trials must be >= 1");
  ScenarioConfig base = cfg;
  if (args.window_mean_count) base.window_mean_count = *args.window_mean_count;
  base.validate();
  const int threads = resolve_threads(args.threads);

  CsvTable table({"density", "pout_lb", "pout_ub", "pout_sim", "ci_half_width", "trials", "mode", "sic"});
  for (const double density : args.densities) {
    if (!(density >= 0.0)) throw InvalidParameter("densities must be >= 0");
    const ScenarioConfig c = with_density(base, args.network, density);
    const analytic::BoundPair bounds = analytic::expected_outage_bounds(c, args.network);
    const montecarlo::OutageEstimate est =
        montecarlo::estimate_outage(c, args.network, args.trials, args.seed, threads);
    table.row()
        .add(density)
        .add(bounds.lower)
        .add(bounds.upper)
        .add(est.outage_fraction)
        .add(est.ci_half_width)
        .add(est.trials)
        .add(to_string(c.mode))
        .add(c.sic.enabled ? "on" : "off");
  }
  return table;
}

montecarlo::TradeoffSweep parse_sweep(const std::string& text) {
  montecarlo::TradeoffSweep sweep;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind == "fractions") {
    sweep.kind = montecarlo::TradeoffSweep::Kind::capacity_fractions;
  } else if (kind == "densities") {
    sweep.kind = montecarlo::TradeoffSweep::Kind::manet_densities;
  } else {
    throw InvalidParameter("sweep must be fractions:<list> or densities:<list>");
  }
  sweep.values.clear();
  if (colon != std::string::npos) {
    std::string_view rest = std::string_view(text).substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      sweep.values.push_back(parse_number(rest.substr(0, comma)));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }
  if (sweep.values.empty()) throw InvalidParameter("sweep list is empty");
  for (const double v : sweep.values) {
    if (!(v >= 0.0)) throw InvalidParameter("sweep values must be >= 0");
    if (sweep.kind == montecarlo::TradeoffSweep::Kind::capacity_fractions && v > 1.0) {
      throw InvalidParameter("sweep fractions must lie in [0, 1]");
    }
  }
  return sweep;
}

CsvTable tradeoff_table(const ScenarioConfig& cfg, const TradeoffArgs& args,
                        std::vector<std::string>* diagnostics) {
  ScenarioConfig c = cfg;
  c.target_outage = resolve_epsilon(cfg, args.epsilon);
  c.validate();
  const montecarlo::TradeoffSweep sweep = parse_sweep(args.sweep);
  CsvTable table({"c_cell", "c_manet", "source", "binding"});

  if (!args.simulated) {
    const analytic::CapacityLine line = analytic::capacity_line(c);
    const std::string limited(analytic::to_string(line.weights.limited));
    auto emit_line = [&](double phi, double c_manet_max, const char* source) {
      for (const double v : sweep.values) {
        const double c_manet =
            sweep.kind == montecarlo::TradeoffSweep::Kind::capacity_fractions
                ? v * c_manet_max
                : (1.0 - c.target_outage) * v;
        table.row().add(line.cellular_capacity(c_manet, phi)).add(c_manet).add(source).add(limited);
      }
    };
    emit_line(line.weights.phi_low, line.c_manet_max_low_phi, "line_phi_low");
    if (line.weights.phi_high != line.weights.phi_low) {
      emit_line(line.weights.phi_high, line.c_manet_max_high_phi, "line_phi_high");
    }
    return table;
  }

  montecarlo::SearchOptions options;
  options.mode = montecarlo::SearchMode::simulated;
  options.tolerance = args.tolerance;
  options.trials = args.trials;
  options.seed = args.seed;
  options.threads = resolve_threads(args.threads);
  const montecarlo::TradeoffResult result =
      montecarlo::tradeoff_curve(c, c.target_outage, sweep, options);
  for (const auto& p : result.points) {
    table.row().add(p.c_cell).add(p.c_manet).add("simulated").add(
        binding_label(p.cellular_binding, p.manet_binding));
  }
  if (diagnostics) *diagnostics = result.diagnostics;
  return table;
}

CsvTable weights_table(const ScenarioConfig& cfg) {
  cfg.validate();
  const analytic::CapacityLine line = analytic::capacity_line(cfg);
  const analytic::TradeoffWeights& w = line.weights;
  const double eta_star = analytic::optimal_power_ratio(cfg);

  CsvTable table({"key", "value"});
  auto add = [&](const char* key, double value) { table.row().add(key).add(value); };
  table.row().add("mode").add(to_string(cfg.mode));
  add("mu", w.mu);
  add("mu_tilde", w.mu_tilde);
  add("phi_low", w.phi_low);
  add("phi_high", w.phi_high);
  add("chi", analytic::sic_chi(cfg));
  add("eta", cfg.power_ratio);
  add("eta_star", eta_star);
  add("eta_star_db", 10.0 * std::log10(eta_star));
  table.row().add("outage_limited").add(analytic::to_string(w.limited));
  add("m_eps", line.m_eps);
  add("c_cell_max_phi_low", line.c_cell_max_low_phi);
  add("c_manet_max_phi_low", line.c_manet_max_low_phi);
  add("c_cell_max_phi_high", line.c_cell_max_high_phi);
  add("c_manet_max_phi_high", line.c_manet_max_high_phi);
  return table;
}

int cmd_outage(const OutageArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ScenarioConfig cfg = resolve_config(args.config_path);
    const CsvTable table = outage_table(cfg, args);
    emit(table, make_manifest(cfg, "outage", args.seed), args.out, out);
    return exit_ok;
  });
}

int cmd_tradeoff(const TradeoffArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ScenarioConfig cfg = resolve_config(args.config_path);
    std::vector<std::string> diagnostics;
    const CsvTable table = tradeoff_table(cfg, args, &diagnostics);
    for (const auto& d : diagnostics) err << "note: " << d << '\n';
    emit(table, make_manifest(cfg, "tradeoff", args.simulated ? args.seed : 0), args.out, out);
    return exit_ok;
  });
}

int cmd_weights(const WeightsArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ScenarioConfig cfg = resolve_config(args.config_path);
    const CsvTable table = weights_table(cfg);
    // Key-value block for humans; full precision goes to the CSV.
    const analytic::CapacityLine line = analytic::capacity_line(cfg);
    const double eta_star = analytic::optimal_power_ratio(cfg);
    std::ostringstream block;
    block << std::setprecision(10);
    block << "mode = " << to_string(cfg.mode) << '\n'
          << "mu = " << line.weights.mu << '\n'
          << "mu_tilde = " << line.weights.mu_tilde << '\n'
          << "phi = [" << line.weights.phi_low << ", " << line.weights.phi_high << "]\n"
          << "chi = " << std::setprecision(5) << std::fixed << analytic::sic_chi(cfg) << '\n'
          << std::defaultfloat << std::setprecision(10)
          << "eta = " << cfg.power_ratio << '\n'
          << "eta_star = " << eta_star << '\n'
          << "eta_star_db = " << 10.0 * std::log10(eta_star) << '\n'
          << "outage_limited = " << analytic::to_string(line.weights.limited) << '\n'
          << "m_eps = " << line.m_eps << '\n'
          << "c_cell_max = [" << line.c_cell_max_high_phi << ", " << line.c_cell_max_low_phi << "]\n"
          << "c_manet_max = [" << line.c_manet_max_high_phi << ", " << line.c_manet_max_low_phi
          << "]\n";
    out << block.str();
    if (!args.out.empty()) emit(table, make_manifest(cfg, "weights", 0), args.out, out);
    return exit_ok;
  });
}

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ScenarioConfig cfg = resolve_config(args.config_path);
    const int threads = resolve_threads(args.threads);
    auto report = [&](const CheckResult& r) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << " ["
          << std::fixed << std::setprecision(1) << r.seconds << std::defaultfloat << " s]\n"
          << std::flush;
    };
    bool all = true;
    for (const auto& r : run_checks(fast_checks(cfg, args.seed, threads), report)) all &= r.passed;
    if (args.full) {
      for (const auto& r : run_checks(acceptance_checks(args.seed, threads), report)) all &= r.passed;
    }
    out << (all ? "all checks passed\n" : "some checks FAILED\n");
    return all ? exit_ok : exit_validation_failed;
  });
}

}  // namespace specshare::app
