#pragma once

#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

namespace setlab {

// Binomial coefficient, saturating at UINT64_MAX on overflow (never reached at
// the scales this library runs at, but keeps the helper total).
std::uint64_t binom(int n, int k);

// Visits every k-element index combination 0 <= c[0] < ... < c[k-1] < n in
// lexicographic order.  fn receives a span over the current combination and
// may return void, or bool where false stops the sweep early.
template <typename Fn>
bool for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return true;
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  auto call = [&]() -> bool {
    if constexpr (std::is_void_v<decltype(fn(std::span<const int>(c)))>) {
      fn(std::span<const int>(c));
      return true;
    } else {
      return fn(std::span<const int>(c));
    }
  };
  if (k == 0) return call();
  while (true) {
    if (!call()) return false;
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return true;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Colexicographic rank of a strictly increasing index combination; a compact
// bijection [n choose k] -> [0, binom(n,k)) used to address per-subset tables.
std::uint64_t colex_rank(std::span<const int> combo);

}  // namespace setlab
