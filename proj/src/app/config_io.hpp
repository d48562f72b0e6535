#pragma once

#include <string>
#include <string_view>

#include "specshare/scenario.hpp"

namespace specshare::app {

/// Flat `key = value` text, one entry per line, `#` starts a comment.
///
///   mode = underlay
///   density.cellular = 2e-4
///   sir_threshold_db = 4.77
///   sic.enabled = true
///   sic.kappa_db = 2
///   fading.interferer = diversity:2
///
/// Ratios may be given linear (`sir_threshold`, `power_ratio`, `sic.kappa`) or
/// in dB with the `_db` suffix, but not both. Omitted keys keep their defaults.
/// Throws InvalidParameter on unknown keys, malformed values, or a config that
/// fails ScenarioConfig::validate().
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

// Canonical form: every key, sorted, linear units, shortest round-trip numbers.
std::string serialize_config(const ScenarioConfig& cfg);

// Hex SHA-256 of serialize_config(cfg).
std::string config_digest(const ScenarioConfig& cfg);

// Shortest decimal that parses back to the same double.
std::string format_number(double value);

std::string fading_to_string(const channel::FadingModel& fading);
channel::FadingModel parse_fading(std::string_view text);

}  // namespace specshare::app
