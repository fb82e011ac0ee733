#include <set>
#include <vector>

#include "doctest.h"
#include "setlab/combinatorics.hpp"

using namespace setlab;

TEST_CASE("binom basic values") {
  CHECK(binom(0, 0) == 1);
  CHECK(binom(5, 0) == 1);
  CHECK(binom(5, 5) == 1);
  CHECK(binom(6, 5) == 6);
  CHECK(binom(7, 5) == 21);
  CHECK(binom(20, 4) == 4845);
  CHECK(binom(3, 5) == 0);
  CHECK(binom(10, 2) == binom(10, 8));
}

TEST_CASE("for_each_combination visits lexicographically") {
  std::vector<std::vector<int>> seen;
  for_each_combination(5, 3, [&](std::span<const int> c) {
    seen.emplace_back(c.begin(), c.end());
  });
  REQUIRE(seen.size() == binom(5, 3));
  CHECK(seen.front() == std::vector<int>{0, 1, 2});
  CHECK(seen.back() == std::vector<int>{2, 3, 4});
  for (std::size_t i = 0; i + 1 < seen.size(); ++i) CHECK(seen[i] < seen[i + 1]);
}

TEST_CASE("for_each_combination edge cases") {
  int calls = 0;
  for_each_combination(4, 0, [&](std::span<const int> c) {
    CHECK(c.empty());
    ++calls;
  });
  CHECK(calls == 1);

  calls = 0;
  for_each_combination(2, 3, [&](std::span<const int>) { ++calls; });
  CHECK(calls == 0);

  calls = 0;
  bool completed = for_each_combination(6, 2, [&](std::span<const int>) {
    ++calls;
    return calls < 4;  // stop early
  });
  CHECK(!completed);
  CHECK(calls == 4);
}

TEST_CASE("colex_rank is a bijection onto [0, binom(n,k))") {
  const int n = 7, k = 4;
  std::set<std::uint64_t> ranks;
  for_each_combination(n, k, [&](std::span<const int> c) {
    std::uint64_t r = colex_rank(c);
    CHECK(r < binom(n, k));
    ranks.insert(r);
  });
  CHECK(ranks.size() == binom(n, k));

  std::vector<int> first{0, 1, 2, 3};
  CHECK(colex_rank(first) == 0);
  std::vector<int> combo{0, 2, 3};
  CHECK(colex_rank(combo) == 2);
}
