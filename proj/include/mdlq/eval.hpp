#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mdlq/labeling.hpp"
#include "mdlq/lattice.hpp"

namespace mdlq {

struct Rates {
  double R0 = 0;  // h - (1/L) log2 ν(βΛ)
  double R = 0;   // R0 - (1/L) log2 N
};

Rates analytic_rates(const Lattice& lat, std::int64_t N, double beta, double h_bits);
double analytic_d0(const Lattice& lat, double beta);       // G(Λ) ν(βΛ)^{2/L}
double analytic_ds(const Labeling& lab, double beta);      // d0 + β² (1/N) Σ d_s

struct Sandwich {
  double lower = 0, mid = 0, upper = 0;
  bool holds() const { return lower <= mid && mid <= upper; }
};

// lower = d0 + β²Σl²/(4N), upper = lower + (2R(βΛ′))².
Sandwich bound_sandwich(const Labeling& lab, double beta);

struct EdgeHistogram {
  std::map<std::int64_t, std::int64_t> B;  // l² = i·N^{2/L}/L  ↦  count
  ThetaShells A;
  std::int64_t K = 0;             // largest i present
  bool below_last_equal = false;  // B_i = A_i for i < K
  bool last_bounded = false;      // B_K ≤ A_K
};

EdgeHistogram edge_histogram(const Labeling& lab);

// Indices usable for a full design: representable, orbit sizes divide N-1,
// and the base edge set can be filled with whole orbits. N = 1 excluded.
std::vector<std::int64_t> design_indices(const Lattice& lat, std::int64_t max_n);
// Representable indices that are exactly the size of a union of shells.
std::vector<std::int64_t> shell_filling_indices(const Lattice& lat, std::int64_t max_n);

// β for N = 2^{L(aR+1)} at source entropy h.
double beta_for_index(const Lattice& lat, std::int64_t N, double a, double h_bits);
double rate_for_index(const Lattice& lat, std::int64_t N, double a);

struct AsymptoticRow {
  std::int64_t N = 0;
  std::int64_t K = 0;
  double R = 0, beta = 0;
  double d_tilde = 0;
  double ratio = 0;          // d̃ 2^{2R(1-a)} / 2^{2h}
  double d0 = 0;
  double d0_normalized = 0;  // d0 2^{2R(1+a)} 4 / 2^{2h}, equals G(Λ)
};

// Uses only the base edge set, which for N = S(K) is every lattice point of
// the first K shells scaled by the sublattice similarity.
std::vector<AsymptoticRow> asymptotic_limit_check(const Lattice& lat, const std::vector<std::int64_t>& Ns,
                                                  double a, double h_bits);

enum class Figure { Fig1, Fig9, Fig10, Asymptotic, Sandwich };
Figure parse_figure(const std::string& name);

struct SweepConfig {
  bool indices_given = false;
  std::vector<std::int64_t> indices;
  LatticeName lattice = LatticeName::A2;
  double a = 0.5;
  double h = 0.0;
  double beta = 1.0;
  int threads = 1;
};

// Header row plus one row per design point, sorted by N.
std::string figure_csv(Figure fig, const SweepConfig& cfg);

}  // namespace mdlq
