#pragma once

#include <cstdint>
#include <string>

#include "specshare/scenario.hpp"

namespace specshare::app {

std::string_view tool_version() noexcept;

struct RunManifest {
  std::string config_digest;
  std::string command;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;  // ISO-8601 UTC
};

RunManifest make_manifest(const ScenarioConfig& cfg, std::string command, std::uint64_t seed);

// The CSV comment line. Leaves out the timestamp so reruns stay byte-identical.
std::string header_comment(const RunManifest& manifest);

std::string manifest_json(const RunManifest& manifest);

// Writes `<csv_path>.manifest.json`.
void write_sidecar(const std::string& csv_path, const RunManifest& manifest);

}  // namespace specshare::app
