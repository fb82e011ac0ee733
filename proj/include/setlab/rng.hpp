#pragma once

#include <cstdint>
#include <random>

namespace setlab {

// splitmix64 step; used to derive independent per-case seeds from a campaign
// seed so that case i is reproducible in isolation.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Thin wrapper over std::mt19937_64 with hand-rolled bounded draws, so the
// same seed yields the same corpus on every platform (std distributions make
// no such promise).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n); n > 0.  Rejection-free modulo bias is acceptable here
  // (n is tiny against 2^64), and the result is platform-stable.
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  int in_range(int lo, int hi) { return lo + below(hi - lo + 1); }  // [lo, hi]

  bool chance(double p) {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace setlab
