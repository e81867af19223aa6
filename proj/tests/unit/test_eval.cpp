#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "mdlq/error.hpp"
#include "mdlq/eval.hpp"

using namespace mdlq;

namespace {

Labeling design(LatticeName name, std::int64_t N) {
  const auto lat = Lattice::make(name);
  return Labeling::build(SimilarSublattice::build(lat, find_params(lat, N)), group_for(lat));
}

std::vector<std::vector<std::string>> rows_of(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(csv);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("rates") {
    const auto z1 = Lattice::make(LatticeName::Z1);
    CHECK(analytic_rates(z1, 1, 1.0, 0.0).R == analytic_rates(z1, 1, 1.0, 0.0).R0);
    const auto r = analytic_rates(z1, 4, 1.0, 0.0);
    CHECK(r.R == doctest::Approx(r.R0 - 2));
    const auto a2 = Lattice::make(LatticeName::A2);
    CHECK(analytic_rates(a2, 14, 0.3, 1.0).R == doctest::Approx(analytic_rates(a2, 7, 0.3, 1.0).R - 0.5));
  }

  TEST_CASE("sandwich") {
    const auto lab = design(LatticeName::Z1, 3);
    const auto s = bound_sandwich(lab, 1.0);
    // edges {0,0}, {0,3}, {0,-3}: Σl² = 18, so lower = 1/12 + 18/12
    CHECK(s.lower == doctest::Approx(1.0 / 12 + 18.0 / 12));
    CHECK(s.holds());
    // upper adds (2R(Λ′))² = (2·3/2)²
    CHECK(s.upper - s.lower == doctest::Approx(9.0));
    const auto one = bound_sandwich(Labeling::build(SimilarSublattice::build(Lattice::make(LatticeName::Z1), {1}),
                                                    group_for(Lattice::make(LatticeName::Z1))),
                                    1.0);
    CHECK(one.lower == one.mid);
    for (double beta : {0.01, 0.5, 3.0}) CHECK(bound_sandwich(design(LatticeName::A2, 31), beta).holds());
  }

  TEST_CASE("edge histogram") {
    const auto h = edge_histogram(design(LatticeName::A2, 31));
    std::vector<std::int64_t> b;
    for (auto [i, n] : h.B) b.push_back(n);
    CHECK(b == std::vector<std::int64_t>{1, 6, 6, 6, 12});
    CHECK(h.below_last_equal);
    CHECK(h.last_bounded);
    const auto z2 = edge_histogram(design(LatticeName::Z2, 25));
    CHECK(z2.below_last_equal);
    CHECK(z2.last_bounded);
  }

  TEST_CASE("design and shell-filling indices") {
    const auto a2 = design_indices(Lattice::make(LatticeName::A2), 40);
    CHECK(a2 == std::vector<std::int64_t>{7, 13, 19, 25, 31, 37});
    const auto z1 = shell_filling_indices(Lattice::make(LatticeName::Z1), 9);
    CHECK(z1 == std::vector<std::int64_t>{3, 5, 7, 9});
    const auto s = shell_filling_indices(Lattice::make(LatticeName::A2), 100);
    CHECK(std::find(s.begin(), s.end(), 31) != s.end());
    CHECK(std::find(s.begin(), s.end(), 25) == s.end());
  }

  TEST_CASE("rate targeting inverts the index law") {
    const auto lat = Lattice::make(LatticeName::A2);
    const double R = rate_for_index(lat, 31, 0.5);
    CHECK(std::exp2(2 * (0.5 * R + 1)) == doctest::Approx(31));
  }

  TEST_CASE("asymptotic rows") {
    const auto lat = Lattice::make(LatticeName::A2);
    const auto rows = asymptotic_limit_check(lat, {7, 31, 61}, 0.5, 1.0);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) CHECK(r.d0_normalized == doctest::Approx(second_moment_G(lat)).epsilon(1e-10));
    CHECK_THROWS_AS(asymptotic_limit_check(lat, {25}, 0.5, 0.0), Error);
    CHECK_THROWS_AS(asymptotic_limit_check(Lattice::make(LatticeName::Z1), {4}, 0.5, 0.0), Error);
  }

  TEST_CASE("fig1") {
    const auto rows = rows_of(figure_csv(Figure::Fig1, {}));
    REQUIRE(rows.size() == 5);
    CHECK(rows[1][3] == "1");
    CHECK(rows[1][5] == "1");
  }

  TEST_CASE("fig9 holds N·ν fixed and A2 sits below Z at matched N") {
    const auto rows = rows_of(figure_csv(Figure::Fig9, {}));
    REQUIRE(rows.size() > 10);
    std::map<std::string, double> z, a;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& r = rows[i];
      const auto lat = Lattice::make(parse_lattice(r[0]));
      const double n_index = std::stod(r[2]), beta = std::stod(r[3]);
      const int L = lat.dim();
      // per two dimensions; the table carries 12 significant digits
      const double nnu = std::pow(n_index * std::pow(beta, L) * lat.volume(), 2.0 / L);
      CHECK(nnu == doctest::Approx(1.0).epsilon(1e-10));
      (r[0] == "A2" ? a : z)[r[1]] = std::stod(r[5]);
    }
    int matched = 0;
    for (const auto& [n, ds] : a)
      if (z.count(n) && std::stod(n) >= 49) {
        ++matched;
        CHECK(ds < z[n]);
      }
    CHECK(matched >= 3);
  }

  TEST_CASE("fig10 covers four dimensions and decreases in L at large N") {
    const auto rows = rows_of(figure_csv(Figure::Fig10, {}));
    std::map<std::pair<int, int>, double> ex;
    for (std::size_t i = 1; i < rows.size(); ++i) ex[{std::stoi(rows[i][3]), std::stoi(rows[i][1])}] = std::stod(rows[i][4]);
    for (int L : {1, 2, 4, 8}) CHECK(ex.count({3, L}) == 1);
    CHECK(ex[{7, 4}] < ex[{7, 2}]);
    CHECK(ex[{7, 2}] < ex[{7, 1}]);
  }

  TEST_CASE("empty sweep is header only") {
    SweepConfig cfg;
    cfg.indices_given = true;
    for (auto fig : {Figure::Fig9, Figure::Fig10, Figure::Asymptotic, Figure::Sandwich}) {
      const auto rows = rows_of(figure_csv(fig, cfg));
      CHECK(rows.size() == 1);
    }
  }

  TEST_CASE("sandwich sweep holds everywhere") {
    const auto rows = rows_of(figure_csv(Figure::Sandwich, {}));
    REQUIRE(rows.size() > 5);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].back() == "1");
  }

  TEST_CASE("unknown figure") { CHECK_THROWS_AS(parse_figure("fig7"), Error); }
}
