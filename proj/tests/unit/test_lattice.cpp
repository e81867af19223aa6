#include <doctest.h>

#include <cmath>
#include <random>

#include "mdlq/error.hpp"
#include "mdlq/lattice.hpp"

using namespace mdlq;

TEST_SUITE("lattice") {
  TEST_CASE("parse names") {
    CHECK(parse_lattice("A2") == LatticeName::A2);
    CHECK(parse_lattice("Z8") == LatticeName::Z8);
    CHECK_THROWS_AS(parse_lattice("D4"), Error);
  }

  TEST_CASE("theta shells") {
    const auto z1 = Lattice::make(LatticeName::Z1).shells(4);
    CHECK(z1.A == std::vector<std::int64_t>{1, 2, 0, 0, 2});
    CHECK(z1.S(4) == 5);

    const auto a2 = Lattice::make(LatticeName::A2).shells(7);
    std::vector<std::int64_t> counts;
    for (auto [norm, n] : a2.nonempty()) counts.push_back(n);
    CHECK(counts == std::vector<std::int64_t>{1, 6, 6, 6, 12});
    CHECK(a2.S(7) == 31);

    const auto z2 = Lattice::make(LatticeName::Z2).shells(5);
    CHECK(z2.A == std::vector<std::int64_t>{1, 4, 4, 0, 4, 8});
    CHECK(Lattice::make(LatticeName::Z8).shells(1).A[1] == 16);
    CHECK(Lattice::make(LatticeName::Z4).shells(2).A[2] == 24);
  }

  TEST_CASE("points_within is sorted by norm then coordinates") {
    const auto lat = Lattice::make(LatticeName::A2);
    const auto pts = lat.points_within(7);
    REQUIRE(pts.size() == 31);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const auto a = lat.form(pts[i - 1]), b = lat.form(pts[i]);
      CHECK((a < b || (a == b && pts[i - 1] < pts[i])));
    }
    CHECK_THROWS_AS(Lattice::make(LatticeName::Z8).points_within(40, 1000), Error);
  }

  TEST_CASE("nearest point matches brute force") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-20, 20);
    for (auto name : {LatticeName::Z1, LatticeName::Z2, LatticeName::A2, LatticeName::Z4}) {
      const auto lat = Lattice::make(name);
      const int L = lat.dim();
      for (int t = 0; t < 300; ++t) {
        std::vector<double> x(static_cast<std::size_t>(L));
        for (auto& v : x) v = u(rng);
        const IVec q = lat.nearest_point(x);
        const auto pq = lat.embed(q);
        double dq = 0;
        for (int i = 0; i < L; ++i) dq += (pq[i] - x[i]) * (pq[i] - x[i]);
        // no neighbour within the relevant vectors is strictly closer
        for (const IVec& d : lat.points_within(2 * L)) {
          const auto p = lat.embed(q + d);
          double dd = 0;
          for (int i = 0; i < L; ++i) dd += (p[i] - x[i]) * (p[i] - x[i]);
          CHECK(dd >= dq - 1e-9);
        }
      }
    }
  }

  TEST_CASE("nearest point ties go to the smallest coordinates") {
    const auto z1 = Lattice::make(LatticeName::Z1);
    CHECK(z1.nearest_point(std::vector<double>{0.5}) == IVec{0});
    CHECK(z1.nearest_point(std::vector<double>{-0.5}) == IVec{-1});
    const auto z2 = Lattice::make(LatticeName::Z2);
    CHECK(z2.nearest_point(std::vector<double>{1.5, -2.5}) == IVec{1, -3});
  }

  TEST_CASE("second moments") {
    const auto a2 = Lattice::make(LatticeName::A2);
    CHECK(second_moment_G(a2) == doctest::Approx(5.0 / (36.0 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(second_moment_G(a2, 3.7) == doctest::Approx(second_moment_G(a2)).epsilon(1e-12));
    CHECK(second_moment_G(Lattice::make(LatticeName::Z4)) == 1.0 / 12.0);
    CHECK(sphere_second_moment(1) == doctest::Approx(1.0 / 12.0));
    CHECK(sphere_second_moment(2) == doctest::Approx(1.0 / (4.0 * M_PI)));
    CHECK(sphere_second_moment(8) < sphere_second_moment(4));
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
  }

  TEST_CASE("hexagon geometry") {
    const auto a2 = Lattice::make(LatticeName::A2);
    const auto poly = voronoi_polygon(a2);
    REQUIRE(poly.size() == 6);
    double area = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto& p = poly[i];
      const auto& q = poly[(i + 1) % poly.size()];
      area += p[0] * q[1] - p[1] * q[0];
      CHECK(p[0] * p[0] + p[1] * p[1] == doctest::Approx(1.0 / 3.0));
    }
    CHECK(area / 2 == doctest::Approx(a2.volume()));
    CHECK(a2.volume() == doctest::Approx(std::sqrt(3.0) / 2));
    // normalized: circumradius² / L
    CHECK(a2.covering_radius_sq() == doctest::Approx(1.0 / 6.0));
    CHECK(Lattice::make(LatticeName::Z8).covering_radius_sq() == doctest::Approx(0.25));
  }
}
