#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "csv.hpp"
#include "specshare/montecarlo.hpp"
#include "specshare/scenario.hpp"

namespace specshare::app {

enum ExitCode : int {
  exit_ok = 0,
  exit_validation_failed = 1,
  exit_invalid_config = 2,
  exit_numerical_failure = 3,
  exit_io_failure = 4,
};

// Worker count: `requested` (0 = all cores), capped by SPECSHARE_THREADS when set.
int resolve_threads(int requested);

// Defaults when `path` is empty.
ScenarioConfig resolve_config(const std::string& path);

struct OutageArgs {
  std::string config_path;
  Network network = Network::cellular;
  // Overlay: the density of `network`. Underlay: lambda + lambda~, split equally.
  std::vector<double> densities;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string out;  // empty: CSV to the output stream
  int threads = 0;
  std::optional<double> window_mean_count;
};

struct TradeoffArgs {
  std::string config_path;
  std::optional<double> epsilon;  // config target_outage when unset
  bool simulated = false;
  std::string sweep = "fractions:0,0.25,0.5,0.75,1";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  double tolerance = 2e-3;
  std::string out;
  int threads = 0;
};

struct WeightsArgs {
  std::string config_path;
  std::string out;  // optional CSV of the same key-value pairs
};

struct ValidateArgs {
  bool full = false;
  std::uint64_t seed = 1;
  std::string config_path;
  int threads = 0;
};

// Table builders; they throw on bad input.
CsvTable outage_table(const ScenarioConfig& cfg, const OutageArgs& args);
CsvTable tradeoff_table(const ScenarioConfig& cfg, const TradeoffArgs& args,
                        std::vector<std::string>* diagnostics = nullptr);
CsvTable weights_table(const ScenarioConfig& cfg);

montecarlo::TradeoffSweep parse_sweep(const std::string& text);

// Commands map exceptions to exit codes and report them on `err`.
int cmd_outage(const OutageArgs& args, std::ostream& out, std::ostream& err);
int cmd_tradeoff(const TradeoffArgs& args, std::ostream& out, std::ostream& err);
int cmd_weights(const WeightsArgs& args, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err);

}  // namespace specshare::app
