#include "specshare/scenario.hpp"

#include <cmath>
#include <sstream>

#include "specshare/errors.hpp"

namespace specshare {

std::string_view to_string(SharingMode mode) noexcept {
  return mode == SharingMode::overlay ? "overlay" : "underlay";
}

std::string_view to_string(Network network) noexcept {
  return network == Network::cellular ? "cellular" : "manet";
}

std::string_view to_string(LinkGeometry geometry) noexcept {
  return geometry == LinkGeometry::exact ? "exact" : "voronoi";
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

bool finite_non_negative(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void ScenarioConfig::validate() const {
  require(total_subchannels >= 1, "total sub-channel count M must be >= 1");
  if (mode == SharingMode::overlay) {
    require(cellular_subchannels >= 0 && manet_subchannels >= 0,
            "overlay sub-channel counts K and K~ must be >= 0");
    require(cellular_subchannels + manet_subchannels == total_subchannels,
            "overlay requires K + K~ = M");
  }
  require(finite_non_negative(cellular_density), "cellular density lambda must be >= 0");
  require(finite_non_negative(manet_density), "MANET density lambda~ must be >= 0");
  if (mode == SharingMode::overlay) {
    require(cellular_subchannels > 0 || cellular_density == 0.0,
            "overlay with K = 0 requires cellular density lambda = 0");
    require(manet_subchannels > 0 || manet_density == 0.0,
            "overlay with K~ = 0 requires MANET density lambda~ = 0");
  }
  require(finite_positive(base_station_density), "base-station density lambda_b must be > 0");
  if (!(std::isfinite(sir_threshold) && sir_threshold >= 1.0)) {
    std::ostringstream msg;
    msg << "SIR threshold must satisfy theta >= 1 (got theta = " << sir_threshold << ")";
    throw InvalidParameter(msg.str());
  }
  require(std::isfinite(path_loss_exponent) && path_loss_exponent > 2.0,
          "path-loss exponent alpha must exceed 2");
  require(finite_positive(power_ratio), "power ratio eta must be > 0");
  require(finite_positive(manet_link_distance), "MANET link distance d~ must be > 0");
  sic.validate();
  require(target_outage > 0.0 && target_outage < 1.0, "target outage epsilon must lie in (0, 1)");
  require(finite_positive(window_mean_count), "simulation window mean count must be > 0");
}

}  // namespace specshare
