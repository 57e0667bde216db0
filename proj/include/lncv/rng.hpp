#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace lncv {

/// SplitMix64 finalizer (Steele, Lea & Flood). Bijective on 64-bit words.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of stream `index` under `master`:
///   splitmix64_mix(master + (index + 1) * 0x9E3779B97F4A7C15).
/// Distinct indices give distinct seeds for a fixed master.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept {
  return splitmix64_mix(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/*!
  xoshiro256** 1.0 (Blackman & Vigna), seeded by expanding a 64-bit seed
  through four successive SplitMix64 outputs.

  Satisfies std::uniform_random_bit_generator. Streams are split by seeding a
  fresh engine with derive_seed() rather than by jumping.
*/
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9E3779B97F4A7C15ULL;
      word = splitmix64_mix(x);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in the open interval (0, 1), 53-bit resolution.
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

/*!
  Standard normal variates by the Marsaglia polar method.

  Each accepted pair yields two variates; the second is cached. The output is a
  pure function of the engine stream, so it is reproducible across platforms
  (unlike std::normal_distribution, whose algorithm is unspecified).
*/
class StandardNormal {
 public:
  double operator()(Xoshiro256& engine);

 private:
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lncv
