#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mdlq/int_linalg.hpp"
#include "mdlq/lattice.hpp"

namespace mdlq {

using Params = std::vector<std::int64_t>;

// Similar sublattice Λ′ = MZ^L inside Λ, with M given in lattice
// coordinates. Similarity is certified by MᵀQM = c²·Q with integer c².
class SimilarSublattice {
 public:
  static SimilarSublattice build(const Lattice& lat, const Params& params);

  const Lattice& parent() const { return lat_; }
  const Params& params() const { return params_; }
  const IMat& basis() const { return basis_; }
  std::int64_t index() const { return index_; }
  std::int64_t scale_sq() const { return c2_; }  // c² = N^{2/L}

  bool contains(const IVec& u) const;
  // Nearest sublattice point to t/k (k = 1 or 2); ties go to the
  // lexicographically smallest sublattice point.
  IVec nearest(const IVec& t, std::int64_t k = 1) const;
  // λ = first + second, first ∈ Λ′ nearest to λ, second ∈ V₀(0).
  std::pair<IVec, IVec> coset_reduce(const IVec& lambda) const;
  // Canonical representative of u modulo k·Λ′, in the box ∏[0, k·h_ii).
  IVec box_reduce(const IVec& u, std::int64_t k = 1) const;

  // V₀(0), sorted lexicographically.
  const std::vector<IVec>& voronoi_set() const { return voronoi_; }
  int voronoi_index(const IVec& rep) const;  // -1 when absent

  // Sublattice points sorted by (norm, coordinates), enough to hold at
  // least `count` of them, with every norm shell complete.
  std::vector<IVec> shortest_points(std::size_t count) const;

 private:
  Lattice lat_;
  Params params_;
  IMat basis_;
  IMat adj_;
  std::int64_t det_ = 1;
  std::int64_t index_ = 1;
  std::int64_t c2_ = 1;
  bool orthogonal_ = true;
  IMat hermite_;
  std::vector<IVec> voronoi_;
  std::unordered_map<IVec, int, IVecHash> voronoi_pos_;
};

Params find_params(const Lattice& lat, std::int64_t N);

// Generators of the order-16 group acting on Z8.
IMat z8_gamma1();
IMat z8_gamma8();

}  // namespace mdlq
