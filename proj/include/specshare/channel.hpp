#pragma once

#include <span>
#include <vector>

#include "specshare/random_stream.hpp"

namespace specshare::channel {

/// Channel power-gain law.
///
/// `unit` is a point mass at 1, `rayleigh` a unit-mean exponential, and
/// `diversity(L)` a gamma variate with shape L and unit scale (the sum of L
/// unit-mean exponential branches). Rayleigh is diversity(1).
class FadingModel {
 public:
  enum class Kind { unit, rayleigh, diversity };

  static FadingModel unit() noexcept { return FadingModel(Kind::unit, 1); }
  static FadingModel rayleigh() noexcept { return FadingModel(Kind::rayleigh, 1); }
  // Throws InvalidParameter for order < 1.
  static FadingModel diversity(int order);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  // Diversity order L (1 for unit and rayleigh).
  [[nodiscard]] int order() const noexcept { return order_; }
  [[nodiscard]] bool is_deterministic() const noexcept { return kind_ == Kind::unit; }

  // E[G^p]; for gamma laws Gamma(L + p) / Gamma(L), which needs L + p > 0.
  [[nodiscard]] double moment(double p) const;

  friend bool operator==(const FadingModel&, const FadingModel&) = default;

 private:
  FadingModel(Kind kind, int order) noexcept : kind_(kind), order_(order) {}

  Kind kind_;
  int order_;
};

double draw_fade(const FadingModel& model, RandomStream& rng);

// Far-field received power power * fade * distance^-alpha. Throws DomainError for distance <= 0.
double received_power(double power, double fade, double distance, double alpha);

struct LinkSample {
  double signal_fade = 1.0;     // W
  double tx_rx_distance = 1.0;  // meters
  double tx_power = 1.0;        // watts
};

struct Interferer {
  double power = 1.0;     // power mark
  double fade = 1.0;      // fading mark
  double distance = 1.0;  // to the receiver, meters
};

struct SicConfig {
  bool enabled = false;
  double kappa = 1.5848931924611136;  // 2 dB

  // Throws InvalidParameter when enabled with kappa <= 1.
  void validate() const;

  friend bool operator==(const SicConfig&, const SicConfig&) = default;
};

// Signal-to-interference ratio; +infinity when no interferers are present.
double compute_sir(const LinkSample& link, std::span<const Interferer> interferers, double alpha);

/// Interferers left after perfect SIC: those with received power strictly
/// above kappa times the received signal power are removed; the rest are kept
/// in their original order. A disabled config returns the input unchanged.
std::vector<Interferer> apply_sic(const LinkSample& link, std::span<const Interferer> interferers,
                                  const SicConfig& sic, double alpha);

// compute_sir(link, apply_sic(link, interferers, sic, alpha), alpha) without the
// intermediate allocation.
double sir_after_sic(const LinkSample& link, std::span<const Interferer> interferers,
                     const SicConfig& sic, double alpha);

}  // namespace specshare::channel
