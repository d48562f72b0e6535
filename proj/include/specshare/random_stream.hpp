#pragma once

#include <cstdint>
#include <limits>

namespace specshare {

/// Counter-based random stream.
///
/// Output n of a stream with key k is splitmix64_finalize(k + n * gamma), i.e. the
/// SplitMix64 sequence started at k. Because every output is a pure function of
/// (key, counter), streams can be derived for any (seed, index) pair without
/// touching shared state: `RandomStream(seed).derive(trial)` yields the same
/// numbers whichever thread evaluates the trial.
///
/// derive() depends on the key only, never on how many numbers were drawn.
/// Satisfies UniformRandomBitGenerator, so it plugs into <random> distributions.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) noexcept : key_(finalize(seed ^ kSeedSalt)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    ++counter_;
    return finalize(key_ + counter_ * kGamma);
  }

  // Child stream keyed by (this key, id).
  [[nodiscard]] RandomStream derive(std::uint64_t id) const noexcept {
    RandomStream child;
    child.key_ = finalize(key_ ^ finalize(id * kGamma + kDeriveSalt));
    return child;
  }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }
  [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

 private:
  RandomStream() noexcept = default;

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSeedSalt = 0x243f6a8885a308d3ULL;
  static constexpr std::uint64_t kDeriveSalt = 0x13198a2e03707344ULL;

  static constexpr std::uint64_t finalize(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace specshare
