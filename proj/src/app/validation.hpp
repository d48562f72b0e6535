#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "specshare/scenario.hpp"

namespace specshare::app {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Check {
  std::string name;
  // Sets passed and detail; the runner fills name and timing.
  std::function<void(CheckResult&)> run;
};

// Quick invariants on `cfg` (under a minute at the shipped defaults).
std::vector<Check> fast_checks(const ScenarioConfig& cfg, std::uint64_t seed, int threads);

// The ten acceptance criteria at the reference scenario (the ScenarioConfig defaults).
std::vector<Check> acceptance_checks(std::uint64_t seed, int threads);

// Runs each check, turning exceptions into failures, and reports as it goes.
std::vector<CheckResult> run_checks(const std::vector<Check>& checks,
                                    const std::function<void(const CheckResult&)>& report = {});

// The config at one x-axis point of an outage ladder: the density of `network`
// under overlay, lambda + lambda~ split equally under underlay.
ScenarioConfig with_density(const ScenarioConfig& cfg, Network network, double density);

// Four densities spanning a decade, the largest with expected lower-bound outage `top`.
std::vector<double> density_ladder(const ScenarioConfig& cfg, Network network, double top);

}  // namespace specshare::app
