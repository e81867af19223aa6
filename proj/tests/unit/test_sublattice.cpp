#include <doctest.h>

#include <random>
#include <set>

#include "mdlq/error.hpp"
#include "mdlq/sublattice.hpp"

using namespace mdlq;

namespace {

// Brute-force nearest sublattice point to t/k over a window of sublattice
// points; ties go to the lexicographically smallest.
IVec brute_nearest(const SimilarSublattice& sub, const IVec& t, std::int64_t k, int reach) {
  const Lattice& lat = sub.parent();
  const int L = lat.dim();
  const IVec centre = sub.nearest(t, k);
  IVec best;
  std::int64_t best_d = -1;
  std::vector<int> idx(static_cast<std::size_t>(L), -reach);
  while (true) {
    IVec coef(L);
    for (int i = 0; i < L; ++i) coef[i] = idx[static_cast<std::size_t>(i)];
    const IVec s = centre + sub.basis() * coef;
    const std::int64_t d = lat.form(k * s - t);
    if (best_d < 0 || d < best_d || (d == best_d && s < best)) {
      best_d = d;
      best = s;
    }
    int i = 0;
    while (i < L && ++idx[static_cast<std::size_t>(i)] > reach) idx[static_cast<std::size_t>(i++)] = -reach;
    if (i == L) break;
  }
  return best;
}

}  // namespace

TEST_SUITE("sublattice") {
  TEST_CASE("similarity certificate and index") {
    struct Case {
      LatticeName name;
      Params p;
      std::int64_t N;
    };
    for (const auto& c : {Case{LatticeName::A2, {5, -1}, 31}, Case{LatticeName::A2, {2, 1}, 3},
                          Case{LatticeName::Z2, {2, 1}, 5}, Case{LatticeName::Z1, {7}, 7},
                          Case{LatticeName::Z4, {1, 1, 1, 0}, 9}, Case{LatticeName::Z8, {1, 1, 1, 0}, 81}}) {
      const auto lat = Lattice::make(c.name);
      const auto sub = SimilarSublattice::build(lat, c.p);
      CHECK(sub.index() == c.N);
      CHECK(static_cast<std::int64_t>(sub.voronoi_set().size()) == c.N);
      const IMat& M = sub.basis();
      const IMat lhs = M.transpose() * lat.gram() * M;
      for (int i = 0; i < lat.dim(); ++i)
        for (int j = 0; j < lat.dim(); ++j) CHECK(lhs(i, j) == sub.scale_sq() * lat.gram()(i, j));
    }
  }

  TEST_CASE("worked example sublattice contains the named points") {
    const auto sub = SimilarSublattice::build(Lattice::make(LatticeName::A2), {5, -1});
    for (const IVec& p : {IVec{5, -1}, IVec{6, 5}, IVec{1, 6}, IVec{4, -7}, IVec{23, 14}, IVec{17, 9}})
      CHECK(sub.contains(p));
    CHECK_FALSE(sub.contains(IVec{18, 10}));
  }

  TEST_CASE("admissibility errors") {
    const auto z2 = Lattice::make(LatticeName::Z2);
    CHECK_THROWS_WITH_AS(find_params(z2, 3), doctest::Contains("NoRepresentation"), Error);
    CHECK_THROWS_AS(find_params(Lattice::make(LatticeName::Z1), 4), Error);
    CHECK_THROWS_AS(SimilarSublattice::build(z2, {0, 0}), Error);
    CHECK_THROWS_AS(SimilarSublattice::build(z2, {1, 2, 3}), Error);
    CHECK(find_params(Lattice::make(LatticeName::A2), 31).size() == 2);
    CHECK(SimilarSublattice::build(Lattice::make(LatticeName::A2), find_params(Lattice::make(LatticeName::A2), 31))
              .index() == 31);
  }

  TEST_CASE("nearest agrees with brute force, including half targets") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> u(-60, 60);
    struct Case {
      LatticeName name;
      Params p;
    };
    for (const auto& c : {Case{LatticeName::A2, {5, -1}}, Case{LatticeName::A2, {3, 0}}, Case{LatticeName::Z2, {2, 1}},
                          Case{LatticeName::Z2, {3, 0}}, Case{LatticeName::Z1, {5}}, Case{LatticeName::Z4, {1, 1, 1, 0}}}) {
      const auto sub = SimilarSublattice::build(Lattice::make(c.name), c.p);
      const int L = sub.parent().dim();
      for (int t = 0; t < 300; ++t) {
        IVec x(L);
        for (int i = 0; i < L; ++i) x[i] = u(rng);
        for (std::int64_t k : {1, 2}) REQUIRE(sub.nearest(x, k) == brute_nearest(sub, x, k, 2));
      }
    }
  }

  TEST_CASE("coset reduction decomposes every point") {
    const auto sub = SimilarSublattice::build(Lattice::make(LatticeName::A2), {5, -1});
    for (int x = -30; x <= 30; x += 3)
      for (int y = -30; y <= 30; y += 2) {
        const IVec p{x, y};
        auto [s, r] = sub.coset_reduce(p);
        CHECK(s + r == p);
        CHECK(sub.contains(s));
        CHECK(sub.voronoi_index(r) >= 0);
      }
  }

  TEST_CASE("box reduction is a canonical representative") {
    const auto sub = SimilarSublattice::build(Lattice::make(LatticeName::Z2), {2, 1});
    for (int k : {1, 3}) {
      std::set<IVec> reps;
      for (int x = -20; x <= 20; ++x)
        for (int y = -20; y <= 20; ++y) {
          const IVec p{x, y};
          const IVec r = sub.box_reduce(p, k);
          CHECK(sub.contains(p - r) == true);
          reps.insert(r);
        }
      CHECK(static_cast<std::int64_t>(reps.size()) == k * k * sub.index());
    }
  }

  TEST_CASE("shortest points come in whole shells") {
    const auto sub = SimilarSublattice::build(Lattice::make(LatticeName::A2), {5, -1});
    const auto pts = sub.shortest_points(31);
    REQUIRE(pts.size() >= 31);
    CHECK(pts.front().is_zero());
    const auto& lat = sub.parent();
    CHECK(lat.form(pts[1]) == 31 * lat.form(IVec{1, 0}));
    for (std::size_t i = 1; i < pts.size(); ++i) {
      CHECK(sub.contains(pts[i]));
      CHECK(lat.form(pts[i - 1]) <= lat.form(pts[i]));
    }
    // the last shell is complete: it has the size of the matching lattice shell
    const std::int64_t last = lat.form(pts.back()) / sub.scale_sq();
    std::int64_t in_last = 0;
    for (const auto& p : pts) in_last += lat.form(p) == last * sub.scale_sq();
    std::int64_t shell = 0;
    for (const auto& p : lat.points_within(last / lat.gram_scale())) shell += lat.form(p) == last;
    CHECK(in_last == shell);
  }
}
