#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "manifest.hpp"

using namespace specshare;
using namespace specshare::app;

int main(int argc, char** argv) {
  CLI::App app{"Outage bounds, capacity trade-offs and Monte Carlo checks for a cellular uplink "
               "sharing spectrum with an ad hoc network"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  OutageArgs outage;
  auto* c_outage = app.add_subcommand("outage", "Analytic bounds and simulated outage over a density list");
  c_outage->add_option("config", outage.config_path, "Config file (defaults when omitted)");
  std::string network;
  c_outage->add_option("--network", network, "cell or manet")
      ->check(CLI::IsMember({"cell", "cellular", "manet"}))
      ->required();
  c_outage->add_option("--densities", outage.densities,
                       "Comma-separated densities in m^-2 (underlay: lambda + lambda~, split equally)")
      ->delimiter(',')
      ->required();
  c_outage->add_option("--trials", outage.trials, "Monte Carlo trials per density")->capture_default_str();
  c_outage->add_option("--seed", outage.seed)->capture_default_str();
  c_outage->add_option("--out", outage.out, "CSV path (stdout when omitted)");
  c_outage->add_option("--threads", outage.threads, "Worker threads (0 = all cores)")->capture_default_str();
  c_outage->add_option("--window-mean", outage.window_mean_count,
                       "Mean interferer count in the simulation window (edge-effect sensitivity)");

  TradeoffArgs tradeoff;
  std::string tradeoff_mode = "analytic";
  auto* c_tradeoff = app.add_subcommand("tradeoff", "Capacity trade-off line or simulated capacity points");
  c_tradeoff->add_option("config", tradeoff.config_path, "Config file (defaults when omitted)");
  c_tradeoff->add_option("--epsilon", tradeoff.epsilon, "Target outage (config target_outage when omitted)");
  c_tradeoff->add_option("--mode", tradeoff_mode)->check(CLI::IsMember({"analytic", "simulated"}))
      ->capture_default_str();
  c_tradeoff->add_option("--sweep", tradeoff.sweep, "fractions:<list> or densities:<list>")
      ->capture_default_str();
  c_tradeoff->add_option("--trials", tradeoff.trials)->capture_default_str();
  c_tradeoff->add_option("--seed", tradeoff.seed)->capture_default_str();
  c_tradeoff->add_option("--tolerance", tradeoff.tolerance, "Relative bracket width of simulated searches")
      ->capture_default_str();
  c_tradeoff->add_option("--out", tradeoff.out, "CSV path (stdout when omitted)");
  c_tradeoff->add_option("--threads", tradeoff.threads)->capture_default_str();

  WeightsArgs weights;
  auto* c_weights = app.add_subcommand("weights", "Trade-off weights, phi interval and optimal power ratio");
  c_weights->add_option("config", weights.config_path, "Config file (defaults when omitted)");
  c_weights->add_option("--out", weights.out, "Optional CSV of the same values");

  ValidateArgs validate;
  std::string suite = "fast";
  auto* c_validate = app.add_subcommand("validate", "Run the invariant suite");
  c_validate->add_option("--suite", suite)->check(CLI::IsMember({"fast", "full"}))->capture_default_str();
  c_validate->add_option("--seed", validate.seed)->capture_default_str();
  c_validate->add_option("--config", validate.config_path, "Config for the fast checks");
  c_validate->add_option("--threads", validate.threads)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_invalid_config;
  }

  if (*c_outage) {
    outage.network = network == "manet" ? Network::manet : Network::cellular;
    return cmd_outage(outage, std::cout, std::cerr);
  }
  if (*c_tradeoff) {
    tradeoff.simulated = tradeoff_mode == "simulated";
    return cmd_tradeoff(tradeoff, std::cout, std::cerr);
  }
  if (*c_weights) return cmd_weights(weights, std::cout, std::cerr);
  validate.full = suite == "full";
  return cmd_validate(validate, std::cout, std::cerr);
}
