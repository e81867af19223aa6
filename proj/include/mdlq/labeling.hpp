#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mdlq/int_linalg.hpp"
#include "mdlq/sublattice.hpp"
#include "mdlq/symmetry.hpp"

namespace mdlq {

// Unordered pair of sublattice points, smaller endpoint first.
struct UndirectedEdge {
  IVec a, b;

  static UndirectedEdge make(const IVec& p, const IVec& q);
  bool is_zero() const { return a == b; }
  IVec difference() const { return b - a; }
  IVec endpoint_sum() const { return a + b; }
  UndirectedEdge shifted(const IVec& s) const { return make(a + s, b + s); }

  friend bool operator==(const UndirectedEdge&, const UndirectedEdge&) = default;
};

// first is the channel-1 label, second the channel-2 label.
struct DirectedEdge {
  IVec first, second;
  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

// Side distortion d_s(λ, e) = (‖λ-p‖² + ‖λ-q‖²)/2 in integer units of
// 1/(4·s·L): Q(q-p) + Q(2λ-p-q).
std::int64_t ds_units(const Lattice& lat, const IVec& lambda, const UndirectedEdge& e);
double ds_value(const Lattice& lat, const IVec& lambda, const UndirectedEdge& e);
double ds_unit_scale(const Lattice& lat);  // normalized distortion per unit

// Parity bit alternating along lines of translated edges. Throws ZeroEdge.
int color(const UndirectedEdge& e);

// True when λ is strictly closer to p than to q; equidistant points are
// split by the sign of the first nonzero 2×2 minor of (p-q, 2λ-p-q).
bool favors_first(const Lattice& lat, const IVec& p, const IVec& q, const IVec& lambda);

// s_c: orient e for the point λ it labels.
DirectedEdge direct_edge(const Lattice& lat, const UndirectedEdge& e, const IVec& lambda);

// g_c: of candidate and its mirror image through the midpoint, the one
// whose orientation under direct_edge is de.
IVec select_point(const Lattice& lat, const DirectedEdge& de, const IVec& candidate);

// α*: the translate of the class with difference d whose midpoint is
// nearest λ.
UndirectedEdge closest_edge_in_class(const SimilarSublattice& sub, const IVec& lambda, const IVec& d);

// {0,0} and {0,λ′} for the N shortest sublattice points λ′. A partly used
// norm shell is filled with whole group orbits in order of their smallest
// member; throws AsymmetricEdgeSet when the slots cannot be filled that way.
std::vector<UndirectedEdge> base_edge_set(const SimilarSublattice& sub, const SymmetryGroup& group);

struct OrbitMatch {
  IVec point;       // orbit representative in V₀(0)
  IVec edge_class;  // canonical difference of the class assigned to it
  std::int64_t cost_units = 0;  // orbit size times d_s of the representative
};

struct LabelEntry {
  IVec point;
  UndirectedEdge edge;
};

struct PropertyReport {
  bool reuse = true;      // each sublattice point is N times channel 1 and N times channel 2
  bool shift = true;      // α(λ+λ′) = α(λ)+λ′
  bool midpoint = true;   // labeled pair sums to the endpoint sum
  bool balance = true;    // translates e, e+d split near/far distances evenly
  bool round_trip = true;
  std::int64_t round_trip_points = 0;
  std::vector<std::string> failures;
  bool ok() const { return reuse && shift && midpoint && balance && round_trip; }
};

class Labeling {
 public:
  // Group-reduced optimal construction; properties are verified before return.
  static Labeling build(const SimilarSublattice& sub, const SymmetryGroup& group);
  // Explicit table (one edge per V₀(0) point), e.g. a hand-made design.
  static Labeling from_entries(const SimilarSublattice& sub, const std::vector<LabelEntry>& entries,
                               std::vector<OrbitMatch> matching = {}, int group_order = 0);

  const SimilarSublattice& sublattice() const { return sub_; }
  const Lattice& lattice() const { return sub_.parent(); }
  std::int64_t index() const { return sub_.index(); }
  const std::vector<LabelEntry>& entries() const { return entries_; }
  const std::vector<OrbitMatch>& orbit_matching() const { return matching_; }
  int group_order() const { return group_order_; }  // 0 for explicit tables
  const UndirectedEdge& edge_for(const IVec& rep) const;

  std::int64_t sum_ds_units() const { return sum_ds_units_; }
  double sum_ds() const;
  double mean_excess() const { return sum_ds() / static_cast<double>(index()); }
  // Σ over V₀(0) of l²(e), normalized norm at unit scale.
  double sum_sq_length() const;

  DirectedEdge encode(const IVec& lambda) const;
  IVec decode_both(const DirectedEdge& de) const;

  // Exact checks. Round trip runs on `samples` random points plus the
  // whole of V₀(0); reuse is counted at every centre of a window of
  // sublattice points.
  PropertyReport verify(std::int64_t samples = 10'000, std::uint64_t seed = 1) const;

 private:
  void index_entries();

  SimilarSublattice sub_;
  std::vector<LabelEntry> entries_;  // in V₀(0) order
  std::vector<OrbitMatch> matching_;
  std::unordered_map<IVec, std::vector<int>, IVecHash> class_entry_;  // class -> entries
  std::int64_t sum_ds_units_ = 0;
  int group_order_ = 0;
};

// Side reconstruction is the received sublattice point itself.
inline IVec decode_side(const IVec& label) { return label; }

}  // namespace mdlq
