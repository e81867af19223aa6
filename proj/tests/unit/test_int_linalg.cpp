#include <doctest.h>

#include <random>

#include "mdlq/int_linalg.hpp"

using namespace mdlq;

TEST_SUITE("int_linalg") {
  TEST_CASE("floor division and modulo round toward minus infinity") {
    CHECK(floor_div(7, 2) == 3);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(floor_div(-8, 2) == -4);
    CHECK(mod_floor(-7, 2) == 1);
    CHECK(mod_floor(-1, 6) == 5);
  }

  TEST_CASE("determinant and adjugate") {
    IMat m(3, {2, -1, 0, -1, 2, -1, 0, -1, 2});
    CHECK(m.det() == 4);
    IMat prod = m.adjugate() * m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(prod(i, j) == (i == j ? 4 : 0));
  }

  TEST_CASE("adjugate identity holds for random matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + trial % 6;
      IMat m(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = d(rng);
      const IMat p = m.adjugate() * m;
      const std::int64_t det = m.det();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) REQUIRE(p(i, j) == (i == j ? det : 0));
      CHECK(m.transpose().det() == det);
    }
  }

  TEST_CASE("hermite form spans the same lattice") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + trial % 4;
      IMat m(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = d(rng);
      if (m.det() == 0) continue;
      const IMat h = hermite_lower(m);
      CHECK(std::abs(h.det()) == std::abs(m.det()));
      for (int i = 0; i < n; ++i) {
        CHECK(h(i, i) > 0);
        for (int j = i + 1; j < n; ++j) CHECK(h(i, j) == 0);
        for (int j = 0; j < i; ++j) {
          CHECK(h(i, j) >= 0);
          CHECK(h(i, j) < h(i, i));
        }
      }
      // each column of h is an integer combination of m's columns
      const IMat adj = m.adjugate();
      const IMat coeff = adj * h;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(coeff(i, j) % m.det() == 0);
    }
  }

  TEST_CASE("vectors compare lexicographically") {
    CHECK(IVec{0, 1} < IVec{1, -5});
    CHECK(IVec{1, -5} < IVec{1, 0});
    CHECK(-IVec{1, 2} == IVec{-1, -2});
    CHECK(3 * IVec{1, -2} == IVec{3, -6});
    CHECK(to_string(IVec{3, -1}) == "(3,-1)");
  }
}
