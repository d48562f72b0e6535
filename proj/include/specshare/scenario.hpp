#pragma once

#include <string_view>

#include "specshare/channel.hpp"

namespace specshare {

enum class SharingMode { overlay, underlay };
enum class Network { cellular, manet };

// How the simulator realizes the cellular link distance D.
enum class LinkGeometry {
  exact,    // inversion of the inner-disk construction
  voronoi,  // explicit base-station field, nearest-neighbour inner disk
};

std::string_view to_string(SharingMode mode) noexcept;
std::string_view to_string(Network network) noexcept;
std::string_view to_string(LinkGeometry geometry) noexcept;

/// All physical and network parameters of one coexistence scenario.
///
/// Units: densities in points per m^2, distances in meters, thresholds and
/// ratios linear (not dB). The MANET transmit power is the unit of power, so
/// the cellular power equals `power_ratio`.
struct ScenarioConfig {
  SharingMode mode = SharingMode::overlay;
  int total_subchannels = 10;     // M
  int cellular_subchannels = 5;   // K (overlay only)
  int manet_subchannels = 5;      // K~ (overlay only)

  double cellular_density = 1e-4;      // lambda
  double manet_density = 1e-4;         // lambda~
  double base_station_density = 1e-3;  // lambda_b

  double sir_threshold = 3.0;                     // theta >= 1
  double path_loss_exponent = 4.0;                // alpha > 2
  double power_ratio = 3.1622776601683795;        // eta = rho / rho~ (5 dB)
  double manet_link_distance = 5.0;               // d~

  channel::SicConfig sic{};
  channel::FadingModel fading_cell = channel::FadingModel::rayleigh();        // W
  channel::FadingModel fading_manet = channel::FadingModel::rayleigh();       // W~
  channel::FadingModel fading_interferer = channel::FadingModel::rayleigh();  // G

  double target_outage = 0.01;  // epsilon

  // Simulation window: mean number of interferers inside the disk.
  double window_mean_count = 200.0;
  LinkGeometry link_geometry = LinkGeometry::exact;

  // 2 / alpha
  [[nodiscard]] double delta() const noexcept { return 2.0 / path_loss_exponent; }
  [[nodiscard]] double cellular_power() const noexcept { return power_ratio; }
  [[nodiscard]] static constexpr double manet_power() noexcept { return 1.0; }

  // Throws InvalidParameter naming the first violated constraint.
  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

}  // namespace specshare
