#include "mdlq/sublattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mdlq/error.hpp"

namespace mdlq {
namespace {

std::string params_text(const Params& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s;
}

IMat quaternion_left(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return IMat(4, {a, -b, -c, -d,  //
                  b, a, -d, c,    //
                  c, d, a, -b,    //
                  d, -c, b, a});
}

}  // namespace

IMat z8_gamma1() {
  IMat g(8);
  for (int blk = 0; blk < 8; blk += 4) {
    g(blk + 0, blk + 1) = 1;
    g(blk + 1, blk + 2) = 1;
    g(blk + 2, blk + 3) = 1;
    g(blk + 3, blk + 0) = -1;
  }
  return g;
}

IMat z8_gamma8() {
  IMat g(8);
  g(0, 4) = 1;
  g(1, 7) = -1;
  g(2, 6) = -1;
  g(3, 5) = -1;
  g(4, 0) = -1;
  g(5, 3) = 1;
  g(6, 2) = 1;
  g(7, 1) = 1;
  return g;
}

SimilarSublattice SimilarSublattice::build(const Lattice& lat, const Params& params) {
  SimilarSublattice s;
  s.lat_ = lat;
  s.params_ = params;
  const int L = lat.dim();
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw Error(ErrorCode::InvalidArgument, std::string(to_string(lat.name())) + " expects " +
                                                  std::to_string(n) + " parameters");
  };
  auto sum_sq = [&]() {
    std::int64_t m = 0;
    for (auto x : params) m += x * x;
    return m;
  };
  switch (lat.name()) {
    case LatticeName::Z1: {
      need(1);
      std::int64_t n = params[0];
      if (n == 0 || n % 2 == 0)
        throw Error(ErrorCode::InadmissibleIndex, "Z1 needs an odd n, got " + std::to_string(n));
      s.basis_ = IMat(1, {n});
      s.c2_ = n * n;
      break;
    }
    case LatticeName::Z2: {
      need(2);
      std::int64_t a = params[0], b = params[1];
      std::int64_t N = a * a + b * b;
      if (N % 2 == 0)
        throw Error(ErrorCode::InadmissibleIndex, "Z2 needs odd a²+b², got " + std::to_string(N));
      s.basis_ = IMat(2, {a, -b, b, a});
      s.c2_ = N;
      break;
    }
    case LatticeName::A2: {
      need(2);
      std::int64_t a = params[0], b = params[1];
      if (a == 0 && b == 0) throw Error(ErrorCode::InadmissibleIndex, "A2 needs (a,b) ≠ (0,0)");
      // Columns u = a + bω and ωu = -b + (a-b)ω.
      s.basis_ = IMat(2, {a, -b, b, a - b});
      s.c2_ = a * a - a * b + b * b;
      break;
    }
    case LatticeName::Z4: {
      need(4);
      std::int64_t m = sum_sq();
      if (m % 2 == 0)
        throw Error(ErrorCode::InadmissibleIndex, "Z4 needs odd a²+b²+c²+d², got " + std::to_string(m));
      s.basis_ = quaternion_left(params[0], params[1], params[2], params[3]);
      s.c2_ = m;
      break;
    }
    case LatticeName::Z8: {
      need(4);
      std::int64_t m = sum_sq();
      if (m == 0) throw Error(ErrorCode::InadmissibleIndex, "Z8 needs a nonzero (a,b,c,d)");
      IVec v{params[0], 0, params[1], 0, params[2], 0, params[3], 0};
      const IMat g1 = z8_gamma1(), g8 = z8_gamma8();
      std::vector<IVec> cols;
      IVec w = v;
      for (int i = 0; i < 4; ++i) {
        cols.push_back(w);
        w = g1 * w;
      }
      w = g8 * v;
      for (int i = 0; i < 4; ++i) {
        cols.push_back(w);
        w = g1 * w;
      }
      s.basis_ = IMat::from_columns(cols);
      s.c2_ = m;
      break;
    }
  }

  const IMat& Q = lat.gram();
  IMat lhs = s.basis_.transpose() * Q * s.basis_;
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      if (lhs(i, j) != s.c2_ * Q(i, j))
        throw Error(ErrorCode::NotSimilar, "MᵀQM ≠ c²Q for params " + params_text(params));

  s.det_ = s.basis_.det();
  if (s.det_ == 0) throw Error(ErrorCode::NotSimilar, "singular sublattice basis");
  s.index_ = std::abs(s.det_);
  s.adj_ = s.basis_.adjugate();
  s.orthogonal_ = lhs.is_diagonal();
  s.hermite_ = hermite_lower(s.basis_);

  // One member per coset from the Hermite box, then moved into V₀(0).
  IVec cur(L);
  std::vector<IVec> reps;
  reps.reserve(static_cast<std::size_t>(s.index_));
  for (;;) {
    reps.push_back(s.coset_reduce(cur).second);
    int i = 0;
    while (i < L) {
      if (++cur[i] < s.hermite_(i, i)) break;
      cur[i] = 0;
      ++i;
    }
    if (i == L) break;
  }
  std::sort(reps.begin(), reps.end());
  s.voronoi_ = std::move(reps);
  for (std::size_t i = 0; i < s.voronoi_.size(); ++i) s.voronoi_pos_.emplace(s.voronoi_[i], static_cast<int>(i));
  if (static_cast<std::int64_t>(s.voronoi_pos_.size()) != s.index_)
    throw Error(ErrorCode::SizeMismatch, "discrete Voronoi set has " + std::to_string(s.voronoi_pos_.size()) +
                                             " points, index is " + std::to_string(s.index_));
  return s;
}

bool SimilarSublattice::contains(const IVec& u) const {
  IVec w = adj_ * u;
  for (int i = 0; i < w.dim; ++i)
    if (w[i] % det_ != 0) return false;
  return true;
}

IVec SimilarSublattice::nearest(const IVec& t, std::int64_t k) const {
  const int L = lat_.dim();
  // Sublattice coordinates w = adj(M) t / (k det M), kept as numerator/denominator.
  IVec num = adj_ * t;
  std::int64_t den = k * det_;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  IVec base(L);
  for (int i = 0; i < L; ++i) base[i] = floor_div(num[i], den);

  IVec best;
  bool have = false;
  std::int64_t best_cost = 0;
  auto consider = [&](const IVec& w, bool compare_cost) {
    IVec sigma = basis_ * w;
    std::int64_t cost = compare_cost ? lat_.form(t - k * sigma) : 0;
    if (!have || cost < best_cost || (cost == best_cost && sigma < best)) {
      best = sigma;
      best_cost = cost;
      have = true;
    }
  };

  if (orthogonal_) {
    // Separable: round each coordinate, branching only on exact halves.
    std::vector<int> tied;
    IVec w(L);
    for (int i = 0; i < L; ++i) {
      std::int64_t rem2 = 2 * (num[i] - base[i] * den);
      if (rem2 < den) {
        w[i] = base[i];
      } else if (rem2 > den) {
        w[i] = base[i] + 1;
      } else {
        w[i] = base[i];
        tied.push_back(i);
      }
    }
    const std::size_t combos = std::size_t{1} << tied.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
      IVec x = w;
      for (std::size_t b = 0; b < tied.size(); ++b)
        if (mask & (std::size_t{1} << b)) x[tied[b]] += 1;
      consider(x, false);
    }
    return best;
  }

  // Hexagonal sublattice: its Delaunay cells in sublattice coordinates are
  // the two triangles of the unit square, so the floor corner's square
  // contains every nearest point.
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      IVec x = base;
      x[0] += a;
      x[1] += b;
      consider(x, true);
    }
  return best;
}

std::pair<IVec, IVec> SimilarSublattice::coset_reduce(const IVec& lambda) const {
  IVec s = nearest(lambda, 1);
  return {s, lambda - s};
}

IVec SimilarSublattice::box_reduce(const IVec& u, std::int64_t k) const {
  IVec x = u;
  for (int i = 0; i < x.dim; ++i) {
    std::int64_t q = floor_div(x[i], k * hermite_(i, i));
    if (q != 0)
      for (int r = i; r < x.dim; ++r) x[r] -= q * k * hermite_(r, i);
  }
  return x;
}

int SimilarSublattice::voronoi_index(const IVec& rep) const {
  auto it = voronoi_pos_.find(rep);
  return it == voronoi_pos_.end() ? -1 : it->second;
}

std::vector<IVec> SimilarSublattice::shortest_points(std::size_t count) const {
  std::int64_t K = 1;
  for (;;) {
    auto ks = lat_.points_within(K);
    if (ks.size() >= count) {
      std::vector<IVec> out;
      out.reserve(ks.size());
      for (const auto& k : ks) out.push_back(basis_ * k);
      return out;
    }
    K *= 2;
  }
}

Params find_params(const Lattice& lat, std::int64_t N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "index must be positive");
  auto none = [&]() {
    return Error(ErrorCode::NoRepresentation,
                 "no " + std::string(to_string(lat.name())) + " sublattice of index " + std::to_string(N));
  };
  auto bound = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(N)))) + 1;
  switch (lat.name()) {
    case LatticeName::Z1:
      if (N % 2 == 0) throw none();
      return {N};
    case LatticeName::Z2:
      if (N % 2 == 0) throw none();
      for (std::int64_t a = 1; a <= bound; ++a)
        for (std::int64_t b = 0; b <= bound; ++b)
          if (a * a + b * b == N) return {a, b};
      throw none();
    case LatticeName::A2:
      // One representative per rotation class: a > 0, -a < b, 2b ≤ a.
      for (std::int64_t a = 1; a <= 2 * bound; ++a)
        for (std::int64_t b = -a + 1; 2 * b <= a; ++b)
          if (a * a - a * b + b * b == N) return {a, b};
      throw none();
    case LatticeName::Z4:
    case LatticeName::Z8: {
      const int root = lat.name() == LatticeName::Z4 ? 2 : 4;
      auto m = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(N), 1.0 / root)));
      std::int64_t p = 1;
      for (int i = 0; i < root; ++i) p *= m;
      if (p != N) throw none();
      if (lat.name() == LatticeName::Z4 && m % 2 == 0) throw none();
      for (std::int64_t a = 0; a * a <= m; ++a)
        for (std::int64_t b = 0; a * a + b * b <= m; ++b)
          for (std::int64_t c = 0; a * a + b * b + c * c <= m; ++c) {
            std::int64_t r = m - a * a - b * b - c * c;
            auto d = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(r))));
            if (d * d == r) return {a, b, c, d};
          }
      throw none();
    }
  }
  throw none();
}

}  // namespace mdlq
