#include "config_io.hpp"

#include <openssl/sha.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "specshare/errors.hpp"

namespace specshare::app {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw InvalidParameter("config key '" + std::string(key) + "': not a finite number: '" +
                           std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidParameter("config key '" + std::string(key) + "': not an integer: '" +
                           std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "off" || text == "no") return false;
  throw InvalidParameter("config key '" + std::string(key) + "': not a boolean: '" +
                         std::string(text) + "'");
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

using Setter = std::function<void(ScenarioConfig&, std::string_view key, std::string_view value)>;

struct KeySpec {
  Setter set;
  std::string_view quantity;  // linear and dB keys of one ratio share this
};

const std::map<std::string, KeySpec, std::less<>>& key_table() {
  static const std::map<std::string, KeySpec, std::less<>> table = [] {
    std::map<std::string, KeySpec, std::less<>> t;
    auto num = [](double ScenarioConfig::*field) {
      return [field](ScenarioConfig& c, std::string_view k, std::string_view v) {
        c.*field = parse_double(k, v);
      };
    };
    auto integer = [](int ScenarioConfig::*field) {
      return [field](ScenarioConfig& c, std::string_view k, std::string_view v) {
        c.*field = parse_int(k, v);
      };
    };
    auto fading = [](channel::FadingModel ScenarioConfig::*field) {
      return [field](ScenarioConfig& c, std::string_view, std::string_view v) {
        c.*field = parse_fading(v);
      };
    };
    t["mode"] = {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
                   if (v == "overlay") {
                     c.mode = SharingMode::overlay;
                   } else if (v == "underlay") {
                     c.mode = SharingMode::underlay;
                   } else {
                     throw InvalidParameter("config key '" + std::string(k) +
                                            "': expected overlay or underlay");
                   }
                 },
                 "mode"};
    t["subchannels.total"] = {integer(&ScenarioConfig::total_subchannels), "M"};
    t["subchannels.cellular"] = {integer(&ScenarioConfig::cellular_subchannels), "K"};
    t["subchannels.manet"] = {integer(&ScenarioConfig::manet_subchannels), "K~"};
    t["density.cellular"] = {num(&ScenarioConfig::cellular_density), "lambda"};
    t["density.manet"] = {num(&ScenarioConfig::manet_density), "lambda~"};
    t["density.base_station"] = {num(&ScenarioConfig::base_station_density), "lambda_b"};
    t["sir_threshold"] = {num(&ScenarioConfig::sir_threshold), "theta"};
    t["sir_threshold_db"] = {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
                               c.sir_threshold = from_db(parse_double(k, v));
                             },
                             "theta"};
    t["path_loss_exponent"] = {num(&ScenarioConfig::path_loss_exponent), "alpha"};
    t["power_ratio"] = {num(&ScenarioConfig::power_ratio), "eta"};
    t["power_ratio_db"] = {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
                             c.power_ratio = from_db(parse_double(k, v));
                           },
                           "eta"};
    t["manet_link_distance"] = {num(&ScenarioConfig::manet_link_distance), "d~"};
    t["sic.enabled"] = {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
                          c.sic.enabled = parse_bool(k, v);
                        },
                        "sic"};
    t["sic.kappa"] = {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
                        c.sic.kappa = parse_double(k, v);
                      },
                      "kappa"};
    t["sic.kappa_db"] = {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
                           c.sic.kappa = from_db(parse_double(k, v));
                         },
                         "kappa"};
    t["fading.cellular"] = {fading(&ScenarioConfig::fading_cell), "W"};
    t["fading.manet"] = {fading(&ScenarioConfig::fading_manet), "W~"};
    t["fading.interferer"] = {fading(&ScenarioConfig::fading_interferer), "G"};
    t["target_outage"] = {num(&ScenarioConfig::target_outage), "epsilon"};
    t["window_mean_count"] = {num(&ScenarioConfig::window_mean_count), "window"};
    t["link_geometry"] = {[](ScenarioConfig& c, std::string_view k, std::string_view v) {
                            if (v == "exact") {
                              c.link_geometry = LinkGeometry::exact;
                            } else if (v == "voronoi") {
                              c.link_geometry = LinkGeometry::voronoi;
                            } else {
                              throw InvalidParameter("config key '" + std::string(k) +
                                                     "': expected exact or voronoi");
                            }
                          },
                          "geometry"};
    return t;
  }();
  return table;
}

}  // namespace

channel::FadingModel parse_fading(std::string_view text) {
  if (text == "unit") return channel::FadingModel::unit();
  if (text == "rayleigh") return channel::FadingModel::rayleigh();
  constexpr std::string_view prefix = "diversity:";
  if (text.substr(0, prefix.size()) == prefix) {
    return channel::FadingModel::diversity(parse_int("fading", text.substr(prefix.size())));
  }
  throw InvalidParameter("fading must be unit, rayleigh or diversity:<L> (got '" +
                         std::string(text) + "')");
}

std::string fading_to_string(const channel::FadingModel& fading) {
  switch (fading.kind()) {
    case channel::FadingModel::Kind::unit:
      return "unit";
    case channel::FadingModel::Kind::rayleigh:
      return "rayleigh";
    case channel::FadingModel::Kind::diversity:
      return "diversity:" + std::to_string(fading.order());
  }
  return "unit";
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw NumericalError("number formatting failed");
  return std::string(buf.data(), ptr);
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::set<std::string_view> seen_quantities;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidParameter("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = key_table().find(key);
    if (it == key_table().end()) {
      throw InvalidParameter("config line " + std::to_string(line_no) + ": unknown key '" +
                             std::string(key) + "'");
    }
    if (!seen_quantities.insert(it->second.quantity).second) {
      throw InvalidParameter("config line " + std::to_string(line_no) + ": '" + std::string(key) +
                             "' sets " + std::string(it->second.quantity) + " a second time");
    }
    it->second.set(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameter("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::map<std::string, std::string> kv;
  kv["mode"] = std::string(to_string(cfg.mode));
  kv["subchannels.total"] = std::to_string(cfg.total_subchannels);
  kv["subchannels.cellular"] = std::to_string(cfg.cellular_subchannels);
  kv["subchannels.manet"] = std::to_string(cfg.manet_subchannels);
  kv["density.cellular"] = format_number(cfg.cellular_density);
  kv["density.manet"] = format_number(cfg.manet_density);
  kv["density.base_station"] = format_number(cfg.base_station_density);
  kv["sir_threshold"] = format_number(cfg.sir_threshold);
  kv["path_loss_exponent"] = format_number(cfg.path_loss_exponent);
  kv["power_ratio"] = format_number(cfg.power_ratio);
  kv["manet_link_distance"] = format_number(cfg.manet_link_distance);
  kv["sic.enabled"] = cfg.sic.enabled ? "true" : "false";
  kv["sic.kappa"] = format_number(cfg.sic.kappa);
  kv["fading.cellular"] = fading_to_string(cfg.fading_cell);
  kv["fading.manet"] = fading_to_string(cfg.fading_manet);
  kv["fading.interferer"] = fading_to_string(cfg.fading_interferer);
  kv["target_outage"] = format_number(cfg.target_outage);
  kv["window_mean_count"] = format_number(cfg.window_mean_count);
  kv["link_geometry"] = std::string(to_string(cfg.link_geometry));

  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string config_digest(const ScenarioConfig& cfg) {
  const std::string text = serialize_config(cfg);
  std::array<unsigned char, SHA256_DIGEST_LENGTH> md{};
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), md.data());
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * md.size());
  for (const unsigned char b : md) {
    out += hex[b >> 4];
    out += hex[b & 0xf];
  }
  return out;
}

}  // namespace specshare::app
