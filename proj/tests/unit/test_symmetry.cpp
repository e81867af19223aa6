#include <doctest.h>
#include <set>

#include "mdlq/error.hpp"
#include "mdlq/sublattice.hpp"
#include "mdlq/symmetry.hpp"

using namespace mdlq;

TEST_SUITE("symmetry") {
  TEST_CASE("group orders") {
    CHECK(group_for(Lattice::make(LatticeName::Z1)).order() == 2);
    CHECK(group_for(Lattice::make(LatticeName::Z2)).order() == 4);
    CHECK(group_for(Lattice::make(LatticeName::A2)).order() == 6);
    CHECK(group_for(Lattice::make(LatticeName::Z8)).order() == 16);
    const int z4 = group_for(Lattice::make(LatticeName::Z4)).order();
    CHECK(z4 % 2 == 0);
    CHECK(z4 >= 4);
  }

  TEST_CASE("identity first, closure, automorphisms") {
    for (auto name : {LatticeName::Z1, LatticeName::Z2, LatticeName::A2, LatticeName::Z4, LatticeName::Z8}) {
      const auto lat = Lattice::make(name);
      const auto g = group_for(lat);
      CHECK(g.elements().front() == IMat::identity(lat.dim()));
      std::set<IMat> all(g.elements().begin(), g.elements().end());
      for (const auto& x : g.elements()) {
        CHECK(x.transpose() * lat.gram() * x == lat.gram());
        for (const auto& y : g.elements()) CHECK(all.count(x * y) == 1);
      }
      CHECK_NOTHROW(check_group(g, lat));
    }
  }

  TEST_CASE("groups act on the sublattices they are used with") {
    const auto a2 = Lattice::make(LatticeName::A2);
    const auto sub = SimilarSublattice::build(a2, {5, -1});
    CHECK_NOTHROW(check_group(group_for(a2), a2, &sub));
    const auto z8 = Lattice::make(LatticeName::Z8);
    const auto s8 = SimilarSublattice::build(z8, {1, 1, 1, 0});
    CHECK_NOTHROW(check_group(group_for(z8), z8, &s8));
  }

  TEST_CASE("a group with a fixed direction is rejected") {
    const auto z2 = Lattice::make(LatticeName::Z2);
    const auto flip = SymmetryGroup::generated_by(2, {IMat(2, {1, 0, 0, -1})});
    CHECK_THROWS_WITH_AS(check_group(flip, z2), doctest::Contains("GroupPropertyViolation"), Error);
  }

  TEST_CASE("canonical classes and orbits") {
    CHECK(canonical_class(IVec{-1, 2}) == IVec{1, -2});
    CHECK(canonical_class(IVec{0, -3}) == IVec{0, 3});
    const auto a2 = Lattice::make(LatticeName::A2);
    const auto g = group_for(a2);
    auto pts = a2.points_within(3);
    pts.erase(pts.begin());
    const auto orbs = orbits(g, pts);
    REQUIRE(orbs.size() == 2);
    CHECK(orbs[0].size() == 6);
    CHECK(orbs[1].size() == 6);
    CHECK(orbs[0].front() < orbs[1].front());
  }
}
