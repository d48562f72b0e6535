#include "specshare/channel.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "specshare/errors.hpp"
#include "specshare/special.hpp"

namespace specshare::channel {

FadingModel FadingModel::diversity(int order) {
  if (order < 1) {
    throw InvalidParameter("diversity order must be >= 1, got " + std::to_string(order));
  }
  return FadingModel(Kind::diversity, order);
}

double FadingModel::moment(double p) const {
  if (kind_ == Kind::unit) return 1.0;
  if (!(order_ + p > 0.0)) {
    throw DomainError("fading moment E[G^p] diverges for p <= -L");
  }
  return special::gamma_ratio(order_, p);
}

double draw_fade(const FadingModel& model, RandomStream& rng) {
  switch (model.kind()) {
    case FadingModel::Kind::unit:
      return 1.0;
    case FadingModel::Kind::rayleigh:
      return -std::log(rng.uniform());
    case FadingModel::Kind::diversity: {
      std::gamma_distribution<double> law(model.order(), 1.0);
      double g = law(rng);
      // gamma_distribution may return exactly 0 after underflow; gains must be positive.
      while (!(g > 0.0)) g = law(rng);
      return g;
    }
  }
  return 1.0;
}

double received_power(double power, double fade, double distance, double alpha) {
  if (!(distance > 0.0)) {
    throw DomainError("received power is singular at zero distance");
  }
  return power * fade * std::pow(distance, -alpha);
}

void SicConfig::validate() const {
  if (enabled && !(kappa > 1.0)) {
    throw InvalidParameter("SIC threshold factor kappa must exceed 1, got " +
                           std::to_string(kappa));
  }
}

namespace {

double signal_power(const LinkSample& link, double alpha) {
  return received_power(link.tx_power, link.signal_fade, link.tx_rx_distance, alpha);
}

double interferer_power(const Interferer& x, double alpha) {
  return received_power(x.power, x.fade, x.distance, alpha);
}

}  // namespace

double compute_sir(const LinkSample& link, std::span<const Interferer> interferers, double alpha) {
  const double signal = signal_power(link, alpha);
  double total = 0.0;
  for (const auto& x : interferers) total += interferer_power(x, alpha);
  if (total == 0.0) return std::numeric_limits<double>::infinity();
  return signal / total;
}

std::vector<Interferer> apply_sic(const LinkSample& link, std::span<const Interferer> interferers,
                                  const SicConfig& sic, double alpha) {
  sic.validate();
  if (!sic.enabled) return {interferers.begin(), interferers.end()};
  const double threshold = sic.kappa * signal_power(link, alpha);
  std::vector<Interferer> residual;
  residual.reserve(interferers.size());
  for (const auto& x : interferers) {
    if (interferer_power(x, alpha) <= threshold) residual.push_back(x);
  }
  return residual;
}

double sir_after_sic(const LinkSample& link, std::span<const Interferer> interferers,
                     const SicConfig& sic, double alpha) {
  const double signal = signal_power(link, alpha);
  const double threshold =
      sic.enabled ? sic.kappa * signal : std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const auto& x : interferers) {
    const double p = interferer_power(x, alpha);
    if (p <= threshold) total += p;
  }
  if (total == 0.0) return std::numeric_limits<double>::infinity();
  return signal / total;
}

}  // namespace specshare::channel
