#include "setlab/ramsey.hpp"

#include <algorithm>
#include <numeric>

#include "setlab/combinatorics.hpp"
#include "setlab/errors.hpp"
#include "setlab/rng.hpp"

namespace setlab {

std::size_t lex_rank(int a, int r, std::span<const int> subset) {
  std::size_t rank = 0;
  int prev = -1;
  for (int j = 0; j < r; ++j) {
    for (int v = prev + 1; v < subset[j]; ++v)
      rank += binom(a - 1 - v, r - 1 - j);
    prev = subset[j];
  }
  return rank;
}

int coloring_value(const Coloring& col, std::span<const int> subset) {
  return col.bits[lex_rank(col.a, col.r, subset)];
}

std::optional<ElementSet> find_homogeneous(const Coloring& col, int size,
                                           int color) {
  if (size > col.a) return std::nullopt;
  std::optional<ElementSet> found;
  std::vector<int> mapped(static_cast<std::size_t>(col.r));
  for_each_combination(col.a, size, [&](std::span<const int> s) {
    bool homogeneous = for_each_combination(size, col.r, [&](std::span<const int> t) {
      for (int j = 0; j < col.r; ++j)
        mapped[static_cast<std::size_t>(j)] = s[t[j]];
      return coloring_value(col, mapped) == color;
    });
    if (!homogeneous) return true;
    found = ElementSet(std::vector<Element>(s.begin(), s.end()));
    return false;
  });
  return found;
}

bool verify_counterexample(const Coloring& col, int b, int c) {
  return !find_homogeneous(col, b, 0) && !find_homogeneous(col, c, 1);
}

namespace {

void check_arrow_arguments(int a, int b, int c, int r) {
  if (r < 1 || b < r || a < b || c < r)
    throw usage_error("arrow check requires 1 <= r <= b <= a and r <= c");
}

// Homogeneity masks for packed colorings (bit M-1-i = lex subset i): a
// size-subset is 0-homogeneous iff x & mask == 0, 1-homogeneous iff
// x & mask == mask.
std::vector<std::uint32_t> subset_masks(int a, int r, int size, int M) {
  std::vector<std::uint32_t> out;
  if (size > a) return out;
  std::vector<int> mapped(static_cast<std::size_t>(r));
  for_each_combination(a, size, [&](std::span<const int> s) {
    std::uint32_t mask = 0;
    for_each_combination(size, r, [&](std::span<const int> t) {
      for (int j = 0; j < r; ++j)
        mapped[static_cast<std::size_t>(j)] = s[t[j]];
      mask |= std::uint32_t{1}
              << (M - 1 - static_cast<int>(lex_rank(a, r, mapped)));
    });
    out.push_back(mask);
  });
  return out;
}

// For every non-identity vertex permutation: src[pos] is the bit of x found
// at bit pos of the permuted coloring, so permuted-vs-original comparison is
// a most-significant-bit-first walk with no materialization.
std::vector<std::vector<int>> permutation_bit_maps(int a, int r, int M) {
  std::vector<std::vector<int>> subsets;
  for_each_combination(a, r, [&](std::span<const int> s) {
    subsets.emplace_back(s.begin(), s.end());
  });

  std::vector<std::vector<int>> maps;
  std::vector<int> perm(static_cast<std::size_t>(a));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> image(static_cast<std::size_t>(r));
  do {
    if (std::is_sorted(perm.begin(), perm.end())) continue;  // identity
    std::vector<int> src(static_cast<std::size_t>(M));
    for (int pos = 0; pos < M; ++pos) {
      const auto& s = subsets[static_cast<std::size_t>(M - 1 - pos)];
      for (int j = 0; j < r; ++j)
        image[static_cast<std::size_t>(j)] = perm[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])];
      std::sort(image.begin(), image.end());
      src[static_cast<std::size_t>(pos)] =
          M - 1 - static_cast<int>(lex_rank(a, r, image));
    }
    maps.push_back(std::move(src));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return maps;
}

bool is_orbit_least(std::uint32_t x, int M,
                    const std::vector<std::vector<int>>& maps) {
  for (const auto& src : maps) {
    for (int pos = M - 1; pos >= 0; --pos) {
      int yb = (x >> src[static_cast<std::size_t>(pos)]) & 1;
      int xb = (x >> pos) & 1;
      if (yb == xb) continue;
      if (yb < xb) return false;
      break;  // permuted coloring is larger; next permutation
    }
  }
  return true;
}

Coloring unpack(std::uint32_t x, int a, int r, int M) {
  Coloring col{a, r, std::vector<std::uint8_t>(static_cast<std::size_t>(M))};
  for (int i = 0; i < M; ++i)
    col.bits[static_cast<std::size_t>(i)] = (x >> (M - 1 - i)) & 1;
  return col;
}

}  // namespace

ArrowVerdict arrow_check(int a, int b, int c, int r, SweepMode mode) {
  check_arrow_arguments(a, b, c, r);
  std::uint64_t count = binom(a, r);
  if (count > 24)
    throw usage_error("confirm mode caps C(a, r) at 24; use refutation beyond");
  const int M = static_cast<int>(count);

  std::vector<std::uint32_t> zero_masks = subset_masks(a, r, b, M);
  std::vector<std::uint32_t> one_masks = subset_masks(a, r, c, M);
  std::vector<std::vector<int>> maps;
  if (mode == SweepMode::canonical) maps = permutation_bit_maps(a, r, M);

  const std::uint32_t limit = std::uint32_t{1} << M;
  for (std::uint32_t x = 0; x < limit; ++x) {
    if (mode == SweepMode::canonical && !is_orbit_least(x, M, maps)) continue;
    bool saved = false;
    for (std::uint32_t mask : zero_masks)
      if ((x & mask) == 0) { saved = true; break; }
    if (!saved)
      for (std::uint32_t mask : one_masks)
        if ((x & mask) == mask) { saved = true; break; }
    if (!saved) return {false, unpack(x, a, r, M)};
  }
  return {true, std::nullopt};
}

std::optional<Coloring> arrow_refute(int a, int b, int c, int r,
                                     std::uint64_t seed, int tries) {
  check_arrow_arguments(a, b, c, r);
  std::uint64_t count = binom(a, r);
  if (count > 1'000'000)
    throw usage_error("refutation caps C(a, r) at 1e6");
  const std::size_t M = static_cast<std::size_t>(count);

  // Per homogeneous-candidate set, the lex ranks of its member r-subsets.
  auto member_ranks = [&](int size) {
    std::vector<std::vector<std::uint32_t>> out;
    if (size > a) return out;
    std::vector<int> mapped(static_cast<std::size_t>(r));
    for_each_combination(a, size, [&](std::span<const int> s) {
      std::vector<std::uint32_t> ms;
      for_each_combination(size, r, [&](std::span<const int> t) {
        for (int j = 0; j < r; ++j)
          mapped[static_cast<std::size_t>(j)] = s[t[j]];
        ms.push_back(static_cast<std::uint32_t>(lex_rank(a, r, mapped)));
      });
      out.push_back(std::move(ms));
    });
    return out;
  };
  std::vector<std::vector<std::uint32_t>> bsets = member_ranks(b);
  std::vector<std::vector<std::uint32_t>> csets = member_ranks(c);

  Rng rng(seed);
  std::vector<std::uint8_t> bits(M);
  for (int attempt = 0; attempt < tries; ++attempt) {
    for (auto& bit : bits) bit = rng.chance(0.5) ? 1 : 0;
    for (int step = 0; step < 20'000; ++step) {
      const std::vector<std::uint32_t>* offender = nullptr;
      std::uint8_t flip_to = 0;
      for (const auto& ms : bsets) {
        bool all_zero = true;
        for (std::uint32_t i : ms) all_zero = all_zero && bits[i] == 0;
        if (all_zero) { offender = &ms; flip_to = 1; break; }
      }
      if (!offender) {
        for (const auto& ms : csets) {
          bool all_one = true;
          for (std::uint32_t i : ms) all_one = all_one && bits[i] == 1;
          if (all_one) { offender = &ms; flip_to = 0; break; }
        }
      }
      if (!offender) {
        Coloring col{a, r, bits};
        if (!verify_counterexample(col, b, c))
          throw invariant_error("refutation produced a bogus counterexample");
        return col;
      }
      bits[(*offender)[rng.below(offender->size())]] = flip_to;
    }
  }
  return std::nullopt;
}

std::vector<LadderEntry> t_ladder(int n_max, int refute_max_a,
                                  std::uint64_t seed) {
  if (n_max < 0) throw usage_error("ladder length must be nonnegative");
  std::vector<LadderEntry> out;
  out.push_back({5, true});
  if (n_max >= 1) {
    int a = 5;
    while (!arrow_check(a, 5, 7, 5).holds) ++a;
    out.push_back({a, true});
  }
  for (int level = 2; level <= n_max; ++level) {
    const LadderEntry prev = out.back();
    int a = prev.value;
    int bound = prev.value;  // the ladder is monotone, so at worst the old value
    bool settled = false;

    // Exact confirmation while the sweep cap allows it (only meaningful when
    // the previous value is itself exact).
    while (prev.exact && binom(a, 5) <= 24) {
      if (arrow_check(a, prev.value, 7, 5).holds) {
        out.push_back({a, true});
        settled = true;
        break;
      }
      bound = a + 1;
      ++a;
    }
    if (settled) continue;

    // Beyond the cap: every refuted a pushes the lower bound to a + 1.  A
    // counterexample against (prev.value, 7) also refutes the true, larger
    // b-value when prev is only a bound, because 0-homogeneous sets of the
    // larger size contain 0-homogeneous sets of the smaller.
    if (level == 2) {
      for (; a <= refute_max_a; ++a) {
        if (!arrow_refute(a, prev.value, 7, 5,
                          mix_seed(seed, static_cast<std::uint64_t>(a))))
          break;
        bound = a + 1;
      }
    } else {
      if (arrow_refute(prev.value, prev.value, 7, 5,
                       mix_seed(seed, 1000 + static_cast<std::uint64_t>(level))))
        bound = prev.value + 1;
    }
    out.push_back({bound, false});
  }
  return out;
}

Coloring triple_coloring(const SetMapping& f, const ElementSet& chain) {
  if (f.arity() != 2)
    throw usage_error("triple coloring needs an arity-2 mapping");
  const int a = chain.size();
  const auto& e = chain.elements();
  Coloring col{a, 3, std::vector<std::uint8_t>(static_cast<std::size_t>(binom(a, 3)))};
  std::size_t i = 0;
  for_each_combination(a, 3, [&](std::span<const int> c) {
    Element x = e[static_cast<std::size_t>(c[0])];
    Element y = e[static_cast<std::size_t>(c[1])];
    Element z = e[static_cast<std::size_t>(c[2])];
    col.bits[i++] = f.image({y, z}).contains(x) ? 1 : 0;
  });
  return col;
}

}  // namespace setlab
