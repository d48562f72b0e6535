#include "manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "config_io.hpp"

namespace specshare::app {

std::string_view tool_version() noexcept { return SPECSHARE_VERSION; }

RunManifest make_manifest(const ScenarioConfig& cfg, std::string command, std::uint64_t seed) {
  RunManifest m;
  m.config_digest = config_digest(cfg);
  m.command = std::move(command);
  m.seed = seed;
  m.tool_version = std::string(tool_version());

  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  m.timestamp = buf;
  return m;
}

std::string header_comment(const RunManifest& manifest) {
  return "specshare " + manifest.command + " config_digest=" + manifest.config_digest +
         " seed=" + std::to_string(manifest.seed) + " version=" + manifest.tool_version;
}

std::string manifest_json(const RunManifest& manifest) {
  const nlohmann::json j = {
      {"config_digest", manifest.config_digest},
      {"command", manifest.command},
      {"seed", manifest.seed},
      {"tool_version", manifest.tool_version},
      {"timestamp", manifest.timestamp},
  };
  return j.dump(2) + "\n";
}

void write_sidecar(const std::string& csv_path, const RunManifest& manifest) {
  const std::string path = csv_path + ".manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << manifest_json(manifest);
}

}  // namespace specshare::app
