#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace shapley_loc {

/// SplitMix64 finalizer. Used both as the per-trial seed mixer and as the
/// output function of SplitMixStream.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of the independent stream for trial `index` under a run-level seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ (index + 0x9e3779b97f4a7c15ULL));
}

// A source of randomness for samplers and attacks. Satisfies
// UniformRandomBitGenerator so it can drive std::shuffle and the standard
// distributions. The variate helpers are virtual so tests can stub them.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  virtual ~RandomStream() = default;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  virtual result_type operator()() = 0;

  virtual double standard_normal() { return normal_(*this); }

  /// Uniform on [0, 1).
  virtual double uniform01() { return uniform_(*this); }

 private:
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Weyl-sequence generator with the SplitMix64 output mix. Cheap to construct,
/// which matters because every Monte Carlo trial gets its own stream.
class SplitMixStream final : public RandomStream {
 public:
  explicit SplitMixStream(std::uint64_t seed) noexcept : state_(seed) {}

  static SplitMixStream for_trial(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMixStream(derive_seed(seed, index));
  }

  result_type operator()() override {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

}  // namespace shapley_loc
