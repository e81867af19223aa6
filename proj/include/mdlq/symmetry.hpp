#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mdlq/int_linalg.hpp"
#include "mdlq/lattice.hpp"
#include "mdlq/sublattice.hpp"

namespace mdlq {

// Finite group of integer matrices acting on lattice coordinates.
class SymmetryGroup {
 public:
  // Closure of the generators, sorted with the identity first.
  static SymmetryGroup generated_by(int dim, const std::vector<IMat>& generators);
  static SymmetryGroup plus_minus(int dim);

  const std::vector<IMat>& elements() const { return elems_; }
  int order() const { return static_cast<int>(elems_.size()); }
  int dim() const { return dim_; }

 private:
  int dim_ = 0;
  std::vector<IMat> elems_;
};

SymmetryGroup group_for(const Lattice& lat);

// Runs every group property against the lattice and, when given, the
// sublattice. Throws GroupPropertyViolation naming the first failure.
void check_group(const SymmetryGroup& g, const Lattice& lat, const SimilarSublattice* sub = nullptr);

// Edge difference up to sign: first nonzero coordinate positive.
IVec canonical_class(const IVec& d);

// Orbits of a point set under the group, restricted to the given items.
// Each orbit is sorted; orbits are ordered by their smallest member.
std::vector<std::vector<IVec>> orbits(const SymmetryGroup& g, const std::vector<IVec>& items);

// Same for undirected edges (endpoints ordered, smaller first).
using EdgePair = std::pair<IVec, IVec>;
std::vector<std::vector<EdgePair>> edge_orbits(const SymmetryGroup& g, const std::vector<EdgePair>& items);

}  // namespace mdlq
