#include "specshare/pointprocess.hpp"

#include <random>
#include <string>

#include "specshare/errors.hpp"

namespace specshare::pointprocess {

namespace {

constexpr std::uint64_t kMarkStream = 0x6d61726bULL;  // "mark"

// Rejection from the bounding square.
Point2 uniform_in_disk(const Region& region, RandomStream& rng) {
  double x = 0.0;
  double y = 0.0;
  do {
    x = 2.0 * rng.uniform() - 1.0;
    y = 2.0 * rng.uniform() - 1.0;
  } while (x * x + y * y >= 1.0 || (x == 0.0 && y == 0.0));
  return {region.center().x + region.radius() * x, region.center().y + region.radius() * y};
}

void require_density(double density, const char* what) {
  if (!(density >= 0.0) || !std::isfinite(density)) {
    throw InvalidParameter(std::string(what) + " must be a finite non-negative density, got " +
                           std::to_string(density));
  }
}

}  // namespace

Region::Region(Point2 center, double radius) : center_(center), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidParameter("region radius must be positive and finite, got " +
                           std::to_string(radius));
  }
}

bool Region::contains(Point2 p) const noexcept {
  const double dx = p.x - center_.x;
  const double dy = p.y - center_.y;
  return dx * dx + dy * dy <= radius_ * radius_;
}

PointSet::PointSet(std::vector<MarkedPoint> points, double generating_density, Region region)
    : points_(std::move(points)), density_(generating_density), region_(region) {}

PointSet sample_ppp(double density, const Region& region, RandomStream& rng, double power,
                    Origin origin) {
  require_density(density, "sample_ppp density");
  std::vector<MarkedPoint> points;
  if (density > 0.0) {
    std::poisson_distribution<long> count_law(density * region.area());
    const long count = count_law(rng);
    points.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
      points.push_back({uniform_in_disk(region, rng), power, 1.0, origin});
    }
  }
  return PointSet(std::move(points), density, region);
}

double radius_for_mean_count(double mean_count, double density) {
  if (!(mean_count > 0.0) || !(density > 0.0)) {
    throw InvalidParameter("radius_for_mean_count needs mean_count > 0 and density > 0");
  }
  return std::sqrt(mean_count / (std::numbers::pi * density));
}

PointSet superpose_and_mark(double cellular_density, double manet_density, const Region& region,
                            RandomStream& rng, MarkPowers powers) {
  require_density(cellular_density, "cellular density");
  require_density(manet_density, "MANET density");
  const double total = cellular_density + manet_density;
  PointSet combined = sample_ppp(total, region, rng, powers.cellular, Origin::cellular);
  if (combined.empty()) return combined;

  const double p_cellular = cellular_density / total;
  RandomStream marks = rng.derive(kMarkStream);
  std::vector<MarkedPoint> points(combined.begin(), combined.end());
  for (auto& point : points) {
    if (marks.uniform() >= p_cellular) {
      point.origin = Origin::manet;
      point.power_mark = powers.manet;
    }
  }
  return PointSet(std::move(points), total, region);
}

PointSet thin(const PointSet& points, double retain_probability, RandomStream& rng) {
  if (!(retain_probability >= 0.0 && retain_probability <= 1.0)) {
    throw InvalidParameter("thinning probability must lie in [0, 1], got " +
                           std::to_string(retain_probability));
  }
  std::vector<MarkedPoint> kept;
  kept.reserve(points.size());
  for (const auto& point : points) {
    if (rng.uniform() < retain_probability) kept.push_back(point);
  }
  return PointSet(std::move(kept), points.generating_density() * retain_probability,
                  points.region());
}

}  // namespace specshare::pointprocess
