#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "specshare/random_stream.hpp"

namespace specshare::pointprocess {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point2 a, Point2 b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

// Disk-shaped sampling window. Lengths in meters.
class Region {
 public:
  // Throws InvalidParameter unless radius > 0 and finite.
  Region(Point2 center, double radius);

  [[nodiscard]] Point2 center() const noexcept { return center_; }
  [[nodiscard]] double radius() const noexcept { return radius_; }
  [[nodiscard]] double area() const noexcept { return std::numbers::pi * radius_ * radius_; }
  [[nodiscard]] bool contains(Point2 p) const noexcept;

 private:
  Point2 center_;
  double radius_;
};

// Which population a point was drawn from; selects its power mark.
enum class Origin { cellular, manet };

struct MarkedPoint {
  Point2 position;
  double power_mark = 1.0;   // watts
  double fading_mark = 1.0;  // unitless channel power gain, > 0
  Origin origin = Origin::cellular;
};

// Immutable realization of a point process restricted to a window.
class PointSet {
 public:
  PointSet(std::vector<MarkedPoint> points, double generating_density, Region region);

  [[nodiscard]] std::span<const MarkedPoint> points() const noexcept { return points_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] bool empty() const noexcept { return points_.empty(); }
  [[nodiscard]] double generating_density() const noexcept { return density_; }
  [[nodiscard]] const Region& region() const noexcept { return region_; }

  [[nodiscard]] auto begin() const noexcept { return points_.begin(); }
  [[nodiscard]] auto end() const noexcept { return points_.end(); }

 private:
  std::vector<MarkedPoint> points_;
  double density_;
  Region region_;
};

// Transmit powers carried as marks by the two populations.
struct MarkPowers {
  double cellular = 1.0;
  double manet = 1.0;
};

/// Homogeneous PPP of the given density (points/m^2) on the disk. Count is
/// Poisson(density * area); positions are i.i.d. uniform on the disk. Every
/// point carries `power` and `origin` as marks and fading mark 1.
PointSet sample_ppp(double density, const Region& region, RandomStream& rng, double power = 1.0,
                    Origin origin = Origin::cellular);

// Window radius that holds `mean_count` points on average at `density`.
double radius_for_mean_count(double mean_count, double density);

/// Superposition of a cellular PPP and a MANET PPP as a single marked PPP.
///
/// The combined process has density cellular + manet; each point independently
/// carries the cellular mark with probability cellular/(cellular + manet) and the
/// MANET mark otherwise. Positions are drawn from `rng` exactly as sample_ppp at
/// the summed density would draw them; marks come from a stream derived from
/// `rng`, so a zero MANET density reproduces sample_ppp point for point.
PointSet superpose_and_mark(double cellular_density, double manet_density, const Region& region,
                            RandomStream& rng, MarkPowers powers = {});

// Independent thinning: keeps each point with `retain_probability`.
PointSet thin(const PointSet& points, double retain_probability, RandomStream& rng);

}  // namespace specshare::pointprocess
