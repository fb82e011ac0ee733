#include "setlab/combinatorics.hpp"

#include <limits>

namespace setlab {

std::uint64_t binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    // r * num never overflows at library scale (n <= 64); saturate defensively.
    if (r > std::numeric_limits<std::uint64_t>::max() / num)
      return std::numeric_limits<std::uint64_t>::max();
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::uint64_t colex_rank(std::span<const int> combo) {
  std::uint64_t r = 0;
  for (std::size_t j = 0; j < combo.size(); ++j)
    r += binom(combo[j], static_cast<int>(j) + 1);
  return r;
}

}  // namespace setlab
