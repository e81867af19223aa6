#include "mdlq/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "mdlq/assignment.hpp"
#include "mdlq/error.hpp"

namespace mdlq {

UndirectedEdge UndirectedEdge::make(const IVec& p, const IVec& q) {
  return q < p ? UndirectedEdge{q, p} : UndirectedEdge{p, q};
}

std::int64_t ds_units(const Lattice& lat, const IVec& lambda, const UndirectedEdge& e) {
  return lat.form(e.b - e.a) + lat.form(2 * lambda - e.a - e.b);
}

double ds_unit_scale(const Lattice& lat) {
  return 1.0 / static_cast<double>(4 * lat.gram_scale() * lat.dim());
}

double ds_value(const Lattice& lat, const IVec& lambda, const UndirectedEdge& e) {
  return static_cast<double>(ds_units(lat, lambda, e)) * ds_unit_scale(lat);
}

int color(const UndirectedEdge& e) {
  for (int j = 0; j < e.a.dim; ++j) {
    std::int64_t delta = std::abs(e.b[j] - e.a[j]);
    if (delta > 0) return static_cast<int>(mod_floor(floor_div(e.a[j] + e.b[j], 2 * delta), 2));
  }
  throw Error(ErrorCode::ZeroEdge, "color of the zero edge is undefined");
}

bool favors_first(const Lattice& lat, const IVec& p, const IVec& q, const IVec& lambda) {
  const IVec d = p - q;
  const IVec r2 = 2 * lambda - p - q;
  const std::int64_t ip = bilinear(lat.gram(), d, r2);
  if (ip != 0) return ip > 0;
  for (int i = 0; i < d.dim; ++i)
    for (int j = i + 1; j < d.dim; ++j) {
      std::int64_t minor = d[i] * r2[j] - d[j] * r2[i];
      if (minor != 0) return minor > 0;
    }
  return true;  // λ is the midpoint itself
}

DirectedEdge direct_edge(const Lattice& lat, const UndirectedEdge& e, const IVec& lambda) {
  if (e.is_zero()) return {e.a, e.a};
  const bool near_a = favors_first(lat, e.a, e.b, lambda);
  const bool a_first = (color(e) == 0) == near_a;
  return a_first ? DirectedEdge{e.a, e.b} : DirectedEdge{e.b, e.a};
}

IVec select_point(const Lattice& lat, const DirectedEdge& de, const IVec& candidate) {
  if (de.first == de.second) return de.first;
  const UndirectedEdge e = UndirectedEdge::make(de.first, de.second);
  if (direct_edge(lat, e, candidate) == de) return candidate;
  return de.first + de.second - candidate;
}

UndirectedEdge closest_edge_in_class(const SimilarSublattice& sub, const IVec& lambda, const IVec& d) {
  IVec s = sub.nearest(2 * lambda - d, 2);
  return UndirectedEdge::make(s, s + d);
}

std::vector<UndirectedEdge> base_edge_set(const SimilarSublattice& sub, const SymmetryGroup& group) {
  const Lattice& lat = sub.parent();
  const auto N = static_cast<std::size_t>(sub.index());
  const auto pts = sub.shortest_points(N);

  std::vector<UndirectedEdge> edges;
  const IVec zero(lat.dim());
  std::size_t i = 0;
  while (i < pts.size() && edges.size() < N) {
    std::size_t j = i;
    const std::int64_t norm = lat.form(pts[i]);
    while (j < pts.size() && lat.form(pts[j]) == norm) ++j;
    const std::size_t shell = j - i;
    const std::size_t room = N - edges.size();
    if (shell <= room) {
      for (std::size_t k = i; k < j; ++k) edges.push_back(UndirectedEdge::make(zero, pts[k]));
    } else {
      std::vector<IVec> members(pts.begin() + static_cast<std::ptrdiff_t>(i), pts.begin() + static_cast<std::ptrdiff_t>(j));
      for (const auto& orb : orbits(group, members)) {
        if (edges.size() + orb.size() > N) continue;
        for (const auto& p : orb) edges.push_back(UndirectedEdge::make(zero, p));
      }
      if (edges.size() != N)
        throw Error(ErrorCode::AsymmetricEdgeSet,
                    "cannot fill " + std::to_string(room) + " slots from a shell of " + std::to_string(shell) +
                        " points with whole orbits of order " + std::to_string(group.order()));
    }
    i = j;
  }
  return edges;
}

namespace {

IVec other_endpoint_diff(const UndirectedEdge& e) { return e.b - e.a; }

}  // namespace

Labeling Labeling::build(const SimilarSublattice& sub, const SymmetryGroup& group) {
  const Lattice& lat = sub.parent();
  const int L = lat.dim();
  const std::int64_t N = sub.index();
  const IVec zero(L);
  if (group.dim() != L) throw Error(ErrorCode::InvalidArgument, "group dimension does not match lattice");
  if (N == 1) {
    Labeling lab = from_entries(sub, {{zero, UndirectedEdge{zero, zero}}});
    lab.group_order_ = group.order();
    return lab;
  }

  check_group(group, lat, &sub);
  const int M = group.order();

  // Point orbits in V₀(0), each of size M.
  std::vector<std::vector<IVec>> point_orbits;
  std::set<IVec> visited;
  for (const auto& p : sub.voronoi_set()) {
    if (p.is_zero() || visited.count(p)) continue;
    std::set<IVec> orb;
    for (const auto& g : group.elements()) orb.insert(sub.coset_reduce(g * p).second);
    if (static_cast<int>(orb.size()) != M)
      throw Error(ErrorCode::SizeMismatch, "point orbit of " + to_string(p) + " has " + std::to_string(orb.size()) +
                                               " cosets, group order is " + std::to_string(M));
    visited.insert(orb.begin(), orb.end());
    point_orbits.emplace_back(orb.begin(), orb.end());
  }

  // Edge classes and their orbits, each of size M/2.
  const auto base = base_edge_set(sub, group);
  std::set<IVec> diffs, classes;
  for (const auto& e : base)
    if (!e.is_zero()) diffs.insert(e.a.is_zero() ? e.b : e.a);
  for (const auto& d : diffs) {
    if (!diffs.count(-d))
      throw Error(ErrorCode::AsymmetricEdgeSet, "edge to " + to_string(d) + " has no opposite partner");
    classes.insert(canonical_class(d));
  }
  std::vector<std::vector<IVec>> class_orbits;
  std::set<IVec> seen;
  for (const auto& d : classes) {
    if (seen.count(d)) continue;
    std::set<IVec> orb;
    for (const auto& g : group.elements()) {
      IVec gd = canonical_class(g * d);
      if (!classes.count(gd)) throw Error(ErrorCode::AsymmetricEdgeSet, "edge set is not closed under the group");
      orb.insert(gd);
    }
    if (2 * static_cast<int>(orb.size()) != M)
      throw Error(ErrorCode::SizeMismatch, "edge class orbit of " + to_string(d) + " has size " +
                                               std::to_string(orb.size()));
    seen.insert(orb.begin(), orb.end());
    class_orbits.emplace_back(orb.begin(), orb.end());
  }
  if (point_orbits.size() != class_orbits.size())
    throw Error(ErrorCode::SizeMismatch, std::to_string(point_orbits.size()) + " point orbits vs " +
                                             std::to_string(class_orbits.size()) + " edge class orbits");

  const std::size_t n = point_orbits.size();
  std::vector<std::vector<std::int64_t>> cost(n, std::vector<std::int64_t>(n));
  std::vector<std::vector<IVec>> best_class(n, std::vector<IVec>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const IVec& p = point_orbits[i].front();
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t best = -1;
      for (const auto& d : class_orbits[j]) {
        std::int64_t c = ds_units(lat, p, closest_edge_in_class(sub, p, d));
        if (best < 0 || c < best) {
          best = c;
          best_class[i][j] = d;
        }
      }
      cost[i][j] = best * M;
    }
  }
  const Assignment asg = solve_assignment(cost);

  std::map<IVec, UndirectedEdge> table;
  table.emplace(zero, UndirectedEdge{zero, zero});
  std::vector<OrbitMatch> matching;
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(asg.row_to_col[i]);
    const IVec& p = point_orbits[i].front();
    const IVec& d = best_class[i][j];
    matching.push_back({p, d, cost[i][j]});
    const UndirectedEdge e = closest_edge_in_class(sub, p, d);
    for (const auto& g : group.elements()) {
      auto [sigma, rep] = sub.coset_reduce(g * p);
      UndirectedEdge ge = UndirectedEdge::make(g * e.a - sigma, g * e.b - sigma);
      auto [it, fresh] = table.emplace(rep, ge);
      if (!fresh && !(it->second == ge))
        throw Error(ErrorCode::SizeMismatch, "conflicting edges for " + to_string(rep));
    }
  }
  if (static_cast<std::int64_t>(table.size()) != N)
    throw Error(ErrorCode::SizeMismatch, "table covers " + std::to_string(table.size()) + " of " +
                                             std::to_string(N) + " points");

  std::vector<LabelEntry> entries;
  entries.reserve(table.size());
  for (const auto& [p, e] : table) entries.push_back({p, e});
  Labeling lab = from_entries(sub, entries, std::move(matching));
  lab.group_order_ = M;
  if (lab.sum_ds_units() != asg.cost)
    throw Error(ErrorCode::PropertyCheckFailed, "table cost differs from the matching cost");
  const PropertyReport rep = lab.verify(2'000);
  if (!rep.ok()) throw Error(ErrorCode::PropertyCheckFailed, rep.failures.front());
  return lab;
}

Labeling Labeling::from_entries(const SimilarSublattice& sub, const std::vector<LabelEntry>& entries,
                                std::vector<OrbitMatch> matching, int group_order) {
  Labeling lab;
  lab.sub_ = sub;
  lab.group_order_ = group_order;
  lab.matching_ = std::move(matching);
  const auto N = static_cast<std::size_t>(sub.index());
  if (entries.size() != N)
    throw Error(ErrorCode::SizeMismatch, std::to_string(entries.size()) + " entries for index " + std::to_string(N));
  lab.entries_.resize(N);
  std::vector<char> filled(N, 0);
  for (const auto& en : entries) {
    int k = sub.voronoi_index(en.point);
    if (k < 0) throw Error(ErrorCode::InvalidArgument, to_string(en.point) + " is not in the discrete Voronoi set");
    if (filled[static_cast<std::size_t>(k)]) throw Error(ErrorCode::InvalidArgument, "duplicate entry " + to_string(en.point));
    if (!sub.contains(en.edge.a) || !sub.contains(en.edge.b))
      throw Error(ErrorCode::InvalidArgument, "edge endpoints of " + to_string(en.point) + " are not sublattice points");
    filled[static_cast<std::size_t>(k)] = 1;
    lab.entries_[static_cast<std::size_t>(k)] = {en.point, UndirectedEdge::make(en.edge.a, en.edge.b)};
  }
  lab.index_entries();
  return lab;
}

void Labeling::index_entries() {
  const Lattice& lat = sub_.parent();
  sum_ds_units_ = 0;
  class_entry_.clear();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& en = entries_[i];
    sum_ds_units_ += ds_units(lat, en.point, en.edge);
    class_entry_[canonical_class(other_endpoint_diff(en.edge))].push_back(static_cast<int>(i));
  }
}

const UndirectedEdge& Labeling::edge_for(const IVec& rep) const {
  int k = sub_.voronoi_index(rep);
  if (k < 0) throw Error(ErrorCode::InvalidArgument, to_string(rep) + " is not in the discrete Voronoi set");
  return entries_[static_cast<std::size_t>(k)].edge;
}

double Labeling::sum_ds() const { return static_cast<double>(sum_ds_units_) * ds_unit_scale(lattice()); }

double Labeling::sum_sq_length() const {
  const Lattice& lat = lattice();
  std::int64_t units = 0;
  for (const auto& en : entries_) units += lat.form(en.edge.b - en.edge.a);
  return static_cast<double>(units) / static_cast<double>(lat.gram_scale() * lat.dim());
}

DirectedEdge Labeling::encode(const IVec& lambda) const {
  auto [sigma, rep] = sub_.coset_reduce(lambda);
  const UndirectedEdge e = edge_for(rep).shifted(sigma);
  return direct_edge(lattice(), e, lambda);
}

IVec Labeling::decode_both(const DirectedEdge& de) const {
  if (de.first.dim != lattice().dim() || de.second.dim != lattice().dim())
    throw Error(ErrorCode::NotALabel, "label dimension mismatch");
  if (!sub_.contains(de.first) || !sub_.contains(de.second))
    throw Error(ErrorCode::NotALabel, "label components must be sublattice points");
  auto it = class_entry_.find(canonical_class(de.first - de.second));
  if (it == class_entry_.end())
    throw Error(ErrorCode::NotALabel, "edge class of " + to_string(de.first - de.second) + " is not in the design");
  if (de.first == de.second) return de.first;
  // Every entry of the class has a translate on this edge; the point it
  // labels (or its mirror through the midpoint) is the one whose encoding
  // reproduces the orientation.
  for (int k : it->second) {
    const LabelEntry& en = entries_[static_cast<std::size_t>(k)];
    const IVec sigma = (en.edge.a - en.edge.b == de.first - de.second) ? de.first - en.edge.a : de.first - en.edge.b;
    const IVec lambda = select_point(lattice(), de, en.point + sigma);
    if (encode(lambda) == de) return lambda;
  }
  throw Error(ErrorCode::NotALabel, "orientation is not produced by the design");
}

PropertyReport Labeling::verify(std::int64_t samples, std::uint64_t seed) const {
  PropertyReport rep;
  const Lattice& lat = lattice();
  const int L = lat.dim();
  const std::int64_t N = index();
  auto fail = [&](bool& flag, const std::string& msg) {
    if (flag && rep.failures.size() < 16) rep.failures.push_back(msg);
    flag = false;
  };

  // Midpoint law and balance along translates, entry by entry.
  for (const auto& en : entries_) {
    if (en.edge.is_zero()) {
      if (!en.point.is_zero()) fail(rep.midpoint, "zero edge labels nonzero point " + to_string(en.point));
      continue;
    }
    const IVec partner = en.edge.endpoint_sum() - en.point;
    auto [sigma, prep] = sub_.coset_reduce(partner);
    if (!(edge_for(prep).shifted(sigma) == en.edge) || partner == en.point)
      fail(rep.midpoint, "edge of " + to_string(en.point) + " does not label its mirror point");

    const IVec d = en.edge.difference();
    std::int64_t ch1 = 0, ch2 = 0;
    for (int k = 0; k < 2; ++k) {
      const IVec lam = en.point + static_cast<std::int64_t>(k) * d;
      const DirectedEdge de = direct_edge(lat, en.edge.shifted(static_cast<std::int64_t>(k) * d), lam);
      ch1 += lat.form(lam - de.first);
      ch2 += lat.form(lam - de.second);
    }
    if (ch1 != ch2) fail(rep.balance, "channel distances differ along translates of " + to_string(en.point));
  }

  // Reuse counts at a window of centres.
  std::vector<IVec> centres;
  {
    const int span = L <= 2 ? 3 : 1;
    const int lo = L <= 2 ? -span : 0;
    IVec w(L);
    for (int i = 0; i < L; ++i) w[i] = lo;
    for (;;) {
      centres.push_back(sub_.basis() * w);
      int i = 0;
      while (i < L) {
        if (++w[i] <= span) break;
        w[i] = lo;
        ++i;
      }
      if (i == L) break;
    }
  }
  for (const auto& c : centres) {
    std::int64_t first = 0, second = 0;
    for (const auto& en : entries_) {
      if (en.edge.is_zero()) {
        ++first;
        ++second;
        continue;
      }
      for (const IVec* end : {&en.edge.a, &en.edge.b}) {
        const IVec sigma = c - *end;
        const DirectedEdge de = direct_edge(lat, en.edge.shifted(sigma), en.point + sigma);
        if (de.first == c) ++first;
        if (de.second == c) ++second;
      }
    }
    if (first != N || second != N)
      fail(rep.reuse, "centre " + to_string(c) + " reused " + std::to_string(first) + "/" + std::to_string(second) +
                          " times, expected " + std::to_string(N));
  }

  // Shift covariance and round trip on random points plus V₀(0).
  std::mt19937_64 rng(seed);
  const auto reach = static_cast<std::int64_t>(std::sqrt(static_cast<double>(sub_.scale_sq()))) * 3 + 3;
  std::uniform_int_distribution<std::int64_t> coord(-reach, reach), small(-5, 5);
  auto round_trip = [&](const IVec& lam) {
    ++rep.round_trip_points;
    const DirectedEdge de = encode(lam);
    IVec back;
    try {
      back = decode_both(de);
    } catch (const Error& e) {
      fail(rep.round_trip, to_string(lam) + ": " + e.what());
      return;
    }
    if (!(back == lam)) fail(rep.round_trip, to_string(lam) + " decodes to " + to_string(back));
  };
  for (const auto& en : entries_) round_trip(en.point);
  for (std::int64_t s = 0; s < samples; ++s) {
    IVec lam(L), w(L);
    for (int i = 0; i < L; ++i) {
      lam[i] = coord(rng);
      w[i] = small(rng);
    }
    round_trip(lam);
    const IVec sigma = sub_.basis() * w;
    const DirectedEdge a = encode(lam), b = encode(lam + sigma);
    if (!(UndirectedEdge::make(a.first, a.second).shifted(sigma) == UndirectedEdge::make(b.first, b.second)))
      fail(rep.shift, "shift by " + to_string(sigma) + " breaks the label of " + to_string(lam));
  }
  return rep;
}

}  // namespace mdlq
