#include "mdlq/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "mdlq/error.hpp"

namespace mdlq {

SymmetryGroup SymmetryGroup::generated_by(int dim, const std::vector<IMat>& generators) {
  SymmetryGroup g;
  g.dim_ = dim;
  std::set<IMat> seen{IMat::identity(dim)};
  std::vector<IMat> frontier{IMat::identity(dim)};
  while (!frontier.empty()) {
    std::vector<IMat> next;
    for (const auto& x : frontier)
      for (const auto& gen : generators) {
        IMat y = gen * x;
        if (seen.insert(y).second) next.push_back(y);
        if (seen.size() > 1024) throw Error(ErrorCode::GroupPropertyViolation, "generators do not close");
      }
    frontier = std::move(next);
  }
  const IMat id = IMat::identity(dim);
  g.elems_.push_back(id);
  for (const auto& x : seen)
    if (!(x == id)) g.elems_.push_back(x);
  return g;
}

SymmetryGroup SymmetryGroup::plus_minus(int dim) { return generated_by(dim, {-IMat::identity(dim)}); }

SymmetryGroup group_for(const Lattice& lat) {
  const int L = lat.dim();
  switch (lat.name()) {
    case LatticeName::Z1: return SymmetryGroup::plus_minus(1);
    case LatticeName::Z2: return SymmetryGroup::generated_by(2, {IMat(2, {0, -1, 1, 0})});
    case LatticeName::A2:
      // Rotation by π/3: x ↦ (1+ω)x.
      return SymmetryGroup::generated_by(2, {IMat(2, {1, -1, 1, 0})});
    case LatticeName::Z4:
      return SymmetryGroup::generated_by(L, {IMat(4, {0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0}),
                                             IMat(4, {0, 0, -1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 1, 0, 0})});
    case LatticeName::Z8: return SymmetryGroup::generated_by(L, {z8_gamma1(), z8_gamma8()});
  }
  return SymmetryGroup::plus_minus(L);
}

namespace {

[[noreturn]] void violation(const std::string& what) { throw Error(ErrorCode::GroupPropertyViolation, what); }

}  // namespace

void check_group(const SymmetryGroup& grp, const Lattice& lat, const SimilarSublattice* sub) {
  const int L = lat.dim();
  const auto& el = grp.elements();
  const IMat id = IMat::identity(L);
  const std::set<IMat> members(el.begin(), el.end());
  if (members.size() != el.size()) violation("duplicate elements");

  if (!members.count(-id)) violation("does not contain -I");
  if (!members.count(id)) violation("identity missing");

  const IMat& Q = lat.gram();
  for (const auto& g : el)
    if (!(g.transpose() * Q * g == Q)) violation("element is not orthogonal for the lattice form");

  for (const auto& g : el)
    for (const auto& h : el)
      if (!members.count(g * h)) violation("not closed under composition");
  for (const auto& g : el) {
    bool inv = false;
    for (const auto& h : el)
      if (g * h == id) inv = true;
    if (!inv) violation("inverse missing");
  }

  // Integer entries are implied by the representation; unimodularity is
  // what makes g map Λ onto itself.
  for (const auto& g : el)
    if (std::abs(g.det()) != 1) violation("does not preserve the lattice");

  for (const auto& g : el)
    if (!(g == id) && (g - id).det() == 0) violation("not fixed-point free");

  const std::int64_t max_norm = L <= 2 ? 12 : (L == 4 ? 6 : 3);
  auto th = lat.shells(max_norm);
  std::int64_t gcd = 0;
  for (std::size_t i = 1; i < th.A.size(); ++i) gcd = std::gcd(gcd, th.A[i]);
  if (gcd % grp.order() != 0) violation("order does not divide the shell sizes");

  if (sub != nullptr) {
    // M⁻¹gM integral, i.e. g maps Λ′ onto itself.
    const IMat& M = sub->basis();
    const IMat adj = M.adjugate();
    const std::int64_t det = M.det();
    for (const auto& g : el) {
      IMat t = adj * g * M;
      for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
          if (t(i, j) % det != 0) violation("does not preserve the sublattice");
    }
  }
}

IVec canonical_class(const IVec& d) {
  for (int i = 0; i < d.dim; ++i) {
    if (d[i] > 0) return d;
    if (d[i] < 0) return -d;
  }
  return d;
}

std::vector<std::vector<IVec>> orbits(const SymmetryGroup& g, const std::vector<IVec>& items) {
  std::set<IVec> pool(items.begin(), items.end());
  std::vector<std::vector<IVec>> out;
  while (!pool.empty()) {
    IVec x = *pool.begin();
    std::set<IVec> orb;
    for (const auto& m : g.elements()) {
      IVec y = m * x;
      if (pool.count(y)) orb.insert(y);
    }
    for (const auto& y : orb) pool.erase(y);
    out.emplace_back(orb.begin(), orb.end());
  }
  return out;
}

std::vector<std::vector<EdgePair>> edge_orbits(const SymmetryGroup& g, const std::vector<EdgePair>& items) {
  auto canon = [](IVec a, IVec b) { return a < b ? EdgePair{a, b} : EdgePair{b, a}; };
  std::set<EdgePair> pool;
  for (const auto& e : items) pool.insert(canon(e.first, e.second));
  std::vector<std::vector<EdgePair>> out;
  while (!pool.empty()) {
    EdgePair x = *pool.begin();
    std::set<EdgePair> orb;
    for (const auto& m : g.elements()) {
      EdgePair y = canon(m * x.first, m * x.second);
      if (pool.count(y)) orb.insert(y);
    }
    for (const auto& y : orb) pool.erase(y);
    out.emplace_back(orb.begin(), orb.end());
  }
  return out;
}

}  // namespace mdlq
