#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mdlq/assignment.hpp"

using namespace mdlq;

TEST_SUITE("assignment") {
  TEST_CASE("matches exhaustive search on random matrices") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + trial % 7;
      std::uniform_int_distribution<std::int64_t> d(0, trial % 3 == 0 ? 3 : 1000);
      std::vector<std::vector<std::int64_t>> c(static_cast<std::size_t>(n), std::vector<std::int64_t>(n));
      for (auto& row : c)
        for (auto& v : row) v = d(rng);
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      std::int64_t best = -1;
      do {
        std::int64_t s = 0;
        for (int i = 0; i < n; ++i) s += c[i][perm[i]];
        if (best < 0 || s < best) best = s;
      } while (std::next_permutation(perm.begin(), perm.end()));
      const auto a = solve_assignment(c);
      REQUIRE(a.cost == best);
      std::int64_t s = 0;
      std::vector<int> seen(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i) {
        s += c[i][a.row_to_col[i]];
        ++seen[a.row_to_col[i]];
      }
      CHECK(s == best);
      CHECK(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }));
    }
  }

  TEST_CASE("empty and negative costs") {
    CHECK(solve_assignment({}).cost == 0);
    CHECK(solve_assignment({{-5, 2}, {3, -7}}).cost == -12);
  }
}
