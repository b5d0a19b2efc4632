#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace bids {

__extension__ using uint128_t = unsigned __int128;

// SplitMix64 finalizer; also used to derive substream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Xoshiro256** 1.0 (Blackman & Vigna). The output sequence for a given seed
// is part of the stable contract of the random selector and the synthetic
// generator; changing it is a format break.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  // Independent substream keyed by (seed, stream, index).
  static constexpr Xoshiro256 substream(std::uint64_t seed, std::uint64_t stream,
                                        std::uint64_t index) noexcept {
    std::uint64_t sm = seed;
    std::uint64_t key = splitmix64(sm) ^ (stream * 0xD1B54A32D192ED03ULL);
    sm = key;
    key = splitmix64(sm) ^ index;
    return Xoshiro256(key);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept {
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

  // Uniform in [0, bound) without modulo bias (Lemire's multiply-shift with
  // rejection). bound must be > 0.
  std::uint64_t bounded(std::uint64_t bound) noexcept {
    uint128_t product = static_cast<uint128_t>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<uint128_t>((*this)()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  // Uniform in (0, 1]: 53 random bits.
  double uniform_open_closed() noexcept {
    return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (cosine branch only, two uniforms per draw).
  double normal() noexcept {
    const double u1 = uniform_open_closed();
    const double u2 = uniform_open_closed();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace bids
