#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace skipq {

// Seeded random source with fully pinned output mappings.
//
// std::mt19937_64 itself is specified bit-exactly by the standard, but the
// std::uniform_* distributions are not; runs must replay bit-identically
// across standard libraries, so the int/real mappings live here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform double in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * kInv53; }

  // Uniform integer in [0, n), n >= 1. Multiply-shift reduction; the bias of
  // at most n/2^64 is irrelevant at the n <= a few hundred used here.
  int uniform_int(int n) {
    using u128 = unsigned __int128;
    return static_cast<int>((u128(gen_()) * u128(n)) >> 64);
  }

  // One element of a small index set, uniformly.
  int pick(const std::vector<int>& items) { return items[uniform_int(static_cast<int>(items.size()))]; }

  std::uint64_t raw() { return gen_(); }

 private:
  static constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53
  std::mt19937_64 gen_;
};

}  // namespace skipq
