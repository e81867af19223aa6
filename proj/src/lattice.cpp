#include "mdlq/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "mdlq/error.hpp"
#include "mdlq/kernels.hpp"

namespace mdlq {

std::string_view to_string(LatticeName name) {
  switch (name) {
    case LatticeName::Z1: return "Z1";
    case LatticeName::Z2: return "Z2";
    case LatticeName::Z4: return "Z4";
    case LatticeName::Z8: return "Z8";
    case LatticeName::A2: return "A2";
  }
  return "?";
}

LatticeName parse_lattice(std::string_view text) {
  for (auto n : {LatticeName::Z1, LatticeName::Z2, LatticeName::Z4, LatticeName::Z8, LatticeName::A2})
    if (text == to_string(n)) return n;
  throw Error(ErrorCode::InvalidArgument, "unknown lattice '" + std::string(text) + "'");
}

std::int64_t ThetaShells::S(std::size_t m) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i <= m && i < A.size(); ++i) s += A[i];
  return s;
}

std::vector<std::pair<std::int64_t, std::int64_t>> ThetaShells::nonempty() const {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::size_t i = 0; i < A.size(); ++i)
    if (A[i] != 0) out.emplace_back(static_cast<std::int64_t>(i), A[i]);
  return out;
}

Lattice Lattice::make(LatticeName name) {
  Lattice lat;
  lat.name_ = name;
  switch (name) {
    case LatticeName::Z1: lat.dim_ = 1; break;
    case LatticeName::Z2: lat.dim_ = 2; break;
    case LatticeName::Z4: lat.dim_ = 4; break;
    case LatticeName::Z8: lat.dim_ = 8; break;
    case LatticeName::A2: lat.dim_ = 2; break;
  }
  const int L = lat.dim_;
  lat.gen_.assign(static_cast<std::size_t>(L * L), 0.0);
  if (name == LatticeName::A2) {
    lat.gram_ = IMat(2, {2, -1, -1, 2});
    lat.scale_ = 2;
    lat.gen_ = {1.0, -0.5, 0.0, std::sqrt(3.0) / 2.0};
    lat.volume_ = std::sqrt(3.0) / 2.0;
  } else {
    lat.gram_ = IMat::identity(L);
    lat.scale_ = 1;
    for (int i = 0; i < L; ++i) lat.gen_[static_cast<std::size_t>(i * L + i)] = 1.0;
    lat.volume_ = 1.0;
  }
  return lat;
}

double Lattice::sq_norm(const IVec& u) const {
  return static_cast<double>(form(u)) / static_cast<double>(scale_ * dim_);
}

std::vector<double> Lattice::embed(const IVec& u) const {
  std::vector<double> x(static_cast<std::size_t>(dim_));
  embed(u, x.data());
  return x;
}

void Lattice::embed(const IVec& u, double* out) const {
  for (int i = 0; i < dim_; ++i) {
    double s = 0.0;
    for (int j = 0; j < dim_; ++j) s += gen_[static_cast<std::size_t>(i * dim_ + j)] * static_cast<double>(u[j]);
    out[i] = s;
  }
}

IVec Lattice::nearest_point(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
  IVec r(dim_);
  const KernelTable& k = scalar_kernels();
  if (name_ == LatticeName::A2) {
    k.nearest_a2(&x[0], &x[1], 1.0, &r[0], &r[1], 1);
  } else {
    k.round_half_down(x.data(), 1.0, r.c.data(), static_cast<std::size_t>(dim_));
  }
  return r;
}

namespace {

void enumerate_cube(int L, int i, std::int64_t budget, IVec& cur, std::vector<IVec>& out) {
  if (i == L) {
    out.push_back(cur);
    return;
  }
  auto r = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(budget))));
  while (r * r > budget) --r;
  while ((r + 1) * (r + 1) <= budget) ++r;
  for (std::int64_t x = -r; x <= r; ++x) {
    cur[i] = x;
    enumerate_cube(L, i + 1, budget - x * x, cur, out);
  }
  cur[i] = 0;
}

}  // namespace

std::vector<IVec> Lattice::points_within(std::int64_t max_norm, std::size_t cap) const {
  if (max_norm < 0) throw Error(ErrorCode::InvalidArgument, "max_norm must be nonnegative");
  const double est = unit_ball_volume(dim_) * std::pow(static_cast<double>(max_norm) + 1.0, dim_ / 2.0) /
                     volume_ * 1.5 + 64.0;
  if (est > static_cast<double>(cap))
    throw Error(ErrorCode::ResourceLimit, "shell enumeration would exceed " + std::to_string(cap) + " points");
  std::vector<IVec> pts;
  if (name_ == LatticeName::A2) {
    // u² - uv + v² ≤ n implies |u|, |v| ≤ sqrt(4n/3).
    auto r = static_cast<std::int64_t>(std::ceil(std::sqrt(4.0 * static_cast<double>(max_norm) / 3.0))) + 1;
    for (std::int64_t u = -r; u <= r; ++u)
      for (std::int64_t v = -r; v <= r; ++v) {
        IVec p{u, v};
        if (shell_index(p) <= max_norm) pts.push_back(p);
      }
  } else {
    IVec cur(dim_);
    enumerate_cube(dim_, 0, max_norm, cur, pts);
  }
  std::sort(pts.begin(), pts.end(), [this](const IVec& a, const IVec& b) {
    auto na = form(a), nb = form(b);
    return na != nb ? na < nb : a < b;
  });
  return pts;
}

ThetaShells Lattice::shells(std::int64_t max_norm, std::size_t cap) const {
  ThetaShells t;
  t.A.assign(static_cast<std::size_t>(max_norm + 1), 0);
  for (const auto& p : points_within(max_norm, cap)) ++t.A[static_cast<std::size_t>(shell_index(p))];
  return t;
}

double Lattice::covering_radius_sq() const {
  // Deep holes: cube corner for Z^L, triangle circumcentre for A2.
  return name_ == LatticeName::A2 ? 1.0 / 6.0 : 0.25;
}

double unit_ball_volume(int L) {
  return std::pow(std::numbers::pi, L / 2.0) / std::tgamma(L / 2.0 + 1.0);
}

double sphere_second_moment(int L) {
  if (L < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  return std::exp((2.0 / L) * std::lgamma(L / 2.0 + 1.0)) / ((L + 2) * std::numbers::pi);
}

std::vector<std::array<double, 2>> voronoi_polygon(const Lattice& lat, double beta) {
  if (lat.dim() != 2) throw Error(ErrorCode::InvalidArgument, "voronoi_polygon needs L = 2");
  using P = std::array<double, 2>;
  std::vector<P> poly = {{-2 * beta, -2 * beta}, {2 * beta, -2 * beta}, {2 * beta, 2 * beta}, {-2 * beta, 2 * beta}};
  for (const auto& u : lat.points_within(4)) {
    if (u.is_zero()) continue;
    auto e = lat.embed(u);
    const double px = beta * e[0], py = beta * e[1];
    const double c = 0.5 * (px * px + py * py);
    auto side = [&](const P& q) { return q[0] * px + q[1] * py - c; };
    std::vector<P> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const P& a = poly[i];
      const P& b = poly[(i + 1) % poly.size()];
      double sa = side(a), sb = side(b);
      if (sa <= 0) out.push_back(a);
      if ((sa < 0 && sb > 0) || (sa > 0 && sb < 0)) {
        double t = sa / (sa - sb);
        out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
      }
    }
    poly = std::move(out);
  }
  return poly;
}

double second_moment_G(const Lattice& lat, double beta) {
  if (lat.name() != LatticeName::A2) return 1.0 / 12.0;
  // ∫(x²+y²) over the polygon, exact for straight edges.
  auto poly = voronoi_polygon(lat, beta);
  double area2 = 0.0, moment12 = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    double cross = a[0] * b[1] - b[0] * a[1];
    area2 += cross;
    moment12 += cross * (a[0] * a[0] + a[0] * b[0] + b[0] * b[0] + a[1] * a[1] + a[1] * b[1] + b[1] * b[1]);
  }
  double nu = area2 / 2.0;
  double moment = moment12 / 12.0;
  return (moment / 2.0) / (nu * nu);
}

}  // namespace mdlq
