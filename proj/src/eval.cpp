#include "mdlq/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "mdlq/error.hpp"
#include "mdlq/sublattice.hpp"
#include "mdlq/symmetry.hpp"

namespace mdlq {

Rates analytic_rates(const Lattice& lat, std::int64_t N, double beta, double h_bits) {
  if (!(beta > 0.0) || N < 1) throw Error(ErrorCode::InvalidArgument, "need beta > 0 and N >= 1");
  const int L = lat.dim();
  Rates r;
  r.R0 = h_bits - std::log2(std::pow(beta, L) * lat.volume()) / L;
  r.R = r.R0 - std::log2(static_cast<double>(N)) / L;
  return r;
}

double analytic_d0(const Lattice& lat, double beta) {
  return second_moment_G(lat) * std::pow(lat.volume(), 2.0 / lat.dim()) * beta * beta;
}

double analytic_ds(const Labeling& lab, double beta) {
  return analytic_d0(lab.lattice(), beta) + beta * beta * lab.mean_excess();
}

Sandwich bound_sandwich(const Labeling& lab, double beta) {
  const double N = static_cast<double>(lab.index());
  const double b2 = beta * beta;
  Sandwich s;
  s.lower = analytic_d0(lab.lattice(), beta) + b2 * lab.sum_sq_length() / (4.0 * N);
  s.mid = analytic_ds(lab, beta);
  // Covering radius of βΛ′ is βc times that of Λ; r* = 2R.
  const double cover_sq = b2 * static_cast<double>(lab.sublattice().scale_sq()) * lab.lattice().covering_radius_sq();
  s.upper = s.lower + 4.0 * cover_sq;
  return s;
}

EdgeHistogram edge_histogram(const Labeling& lab) {
  const Lattice& lat = lab.lattice();
  const std::int64_t unit = lat.gram_scale() * lab.sublattice().scale_sq();
  EdgeHistogram h;
  for (const auto& en : lab.entries()) {
    const std::int64_t f = lat.form(en.edge.difference());
    if (f % unit != 0) throw Error(ErrorCode::PropertyCheckFailed, "edge length is not a shell multiple");
    ++h.B[f / unit];
  }
  h.K = h.B.rbegin()->first;
  h.A = lat.shells(h.K);
  h.below_last_equal = true;
  for (std::int64_t i = 0; i < h.K; ++i) {
    auto it = h.B.find(i);
    const std::int64_t b = it == h.B.end() ? 0 : it->second;
    if (b != h.A.A[static_cast<std::size_t>(i)]) h.below_last_equal = false;
  }
  h.last_bounded = h.B[h.K] <= h.A.A[static_cast<std::size_t>(h.K)];
  return h;
}

namespace {

bool representable(const Lattice& lat, std::int64_t N) {
  try {
    find_params(lat, N);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// (norm, cumulative count) at the end of each nonempty shell, up to max_n points.
std::vector<std::pair<std::int64_t, std::int64_t>> cumulative_shells(const Lattice& lat, std::int64_t max_n) {
  std::int64_t K = 1;
  std::vector<IVec> pts;
  for (;;) {
    pts = lat.points_within(K);
    if (static_cast<std::int64_t>(pts.size()) > max_n) break;
    K *= 2;
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::int64_t n = lat.shell_index(pts[i]);
    if (i + 1 == pts.size() || lat.shell_index(pts[i + 1]) != n) out.emplace_back(n, static_cast<std::int64_t>(i + 1));
  }
  return out;
}

template <class Out>
std::vector<Out> parallel_map(std::size_t count, int threads, const std::function<Out(std::size_t)>& fn) {
  std::vector<std::optional<Out>> slots(count);
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      if (failed) return;
      try {
        slots[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Out> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Labeling design_for(const Lattice& lat, std::int64_t N) {
  return Labeling::build(SimilarSublattice::build(lat, find_params(lat, N)), group_for(lat));
}

}  // namespace

std::vector<std::int64_t> design_indices(const Lattice& lat, std::int64_t max_n) {
  const int M = group_for(lat).order();
  std::vector<std::int64_t> out;
  for (std::int64_t N = 3; N <= max_n; N += 2) {
    if ((N - 1) % M != 0 || !representable(lat, N)) continue;
    try {
      base_edge_set(SimilarSublattice::build(lat, find_params(lat, N)), group_for(lat));
      out.push_back(N);
    } catch (const Error&) {
    }
  }
  return out;
}

std::vector<std::int64_t> shell_filling_indices(const Lattice& lat, std::int64_t max_n) {
  std::vector<std::int64_t> out;
  for (const auto& [norm, count] : cumulative_shells(lat, max_n))
    if (count > 1 && count <= max_n && representable(lat, count)) out.push_back(count);
  return out;
}

double rate_for_index(const Lattice& lat, std::int64_t N, double a) {
  return (std::log2(static_cast<double>(N)) / lat.dim() - 1.0) / a;
}

double beta_for_index(const Lattice& lat, std::int64_t N, double a, double h_bits) {
  const int L = lat.dim();
  const double R = rate_for_index(lat, N, a);
  const double betaL = std::exp2(L * h_bits - L * R * (1.0 + a)) / (std::exp2(L) * lat.volume());
  return std::pow(betaL, 1.0 / L);
}

std::vector<AsymptoticRow> asymptotic_limit_check(const Lattice& lat, const std::vector<std::int64_t>& Ns, double a,
                                                  double h_bits) {
  if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::InvalidArgument, "a must lie in (0,1)");
  const int L = lat.dim();
  std::vector<AsymptoticRow> rows;
  if (Ns.empty()) return rows;
  const std::int64_t top = *std::max_element(Ns.begin(), Ns.end());
  auto shells = cumulative_shells(lat, top);
  for (std::int64_t N : Ns) {
    auto it = std::find_if(shells.begin(), shells.end(), [N](const auto& s) { return s.second == N; });
    if (N < 2 || it == shells.end() || !representable(lat, N))
      throw Error(ErrorCode::InadmissibleIndex, std::to_string(N) + " is not a shell-filling index for " +
                                                    std::string(to_string(lat.name())));
    AsymptoticRow r;
    r.N = N;
    r.K = it->first;
    // Σ i·B_i with B_i = A_i for every shell up to K.
    double sum_i = 0.0;
    for (const auto& p : lat.points_within(r.K)) sum_i += static_cast<double>(lat.shell_index(p));
    r.R = rate_for_index(lat, N, a);
    r.beta = beta_for_index(lat, N, a, h_bits);
    const double sum_l2 = sum_i * std::pow(static_cast<double>(N), 2.0 / L) / L;
    r.d_tilde = sum_l2 * r.beta * r.beta / (4.0 * static_cast<double>(N));
    r.ratio = r.d_tilde * std::exp2(2.0 * r.R * (1.0 - a)) / std::exp2(2.0 * h_bits);
    r.d0 = analytic_d0(lat, r.beta);
    r.d0_normalized = r.d0 * std::exp2(2.0 * r.R * (1.0 + a)) * 4.0 / std::exp2(2.0 * h_bits);
    rows.push_back(r);
  }
  return rows;
}

Figure parse_figure(const std::string& name) {
  if (name == "fig1") return Figure::Fig1;
  if (name == "fig9") return Figure::Fig9;
  if (name == "fig10") return Figure::Fig10;
  if (name == "asymptotic") return Figure::Asymptotic;
  if (name == "sandwich") return Figure::Sandwich;
  throw Error(ErrorCode::InvalidArgument, "unknown figure '" + name + "'");
}

namespace {

std::string fig1_csv() {
  std::ostringstream out;
  out << "L,lattice,G,G_over_GZ,G_sphere,G_sphere_over_GS1\n";
  const double gz = 1.0 / 12.0;
  const double gs1 = sphere_second_moment(1);
  for (auto name : {LatticeName::Z1, LatticeName::A2, LatticeName::Z4, LatticeName::Z8}) {
    const Lattice lat = Lattice::make(name);
    const double g = second_moment_G(lat);
    const double gs = sphere_second_moment(lat.dim());
    out << lat.dim() << ',' << to_string(name) << ',' << num(g) << ',' << num(g / gz) << ',' << num(gs) << ','
        << num(gs / gs1) << '\n';
  }
  return out.str();
}

struct Fig9Point {
  LatticeName lattice;
  std::int64_t shown, index;
};

std::string fig9_csv(const SweepConfig& cfg) {
  const Lattice a2 = Lattice::make(LatticeName::A2), z1 = Lattice::make(LatticeName::Z1);
  std::vector<Fig9Point> pts;
  if (cfg.indices_given) {
    for (auto N : cfg.indices) {
      if (N >= 3 && (N - 1) % 6 == 0 && representable(a2, N)) pts.push_back({LatticeName::A2, N, N});
      auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(N))));
      if (r * r == N && r >= 3 && r % 2 == 1) pts.push_back({LatticeName::Z1, N, r});
    }
  } else {
    for (auto N : design_indices(a2, 200)) pts.push_back({LatticeName::A2, N, N});
    for (std::int64_t r = 3; r * r <= 200; r += 2) pts.push_back({LatticeName::Z1, r * r, r});
  }
  std::sort(pts.begin(), pts.end(), [](const Fig9Point& x, const Fig9Point& y) {
    return x.shown != y.shown ? x.shown < y.shown : x.lattice < y.lattice;
  });
  auto rows = parallel_map<std::string>(pts.size(), cfg.threads, [&](std::size_t i) {
    const auto& p = pts[i];
    const Lattice& lat = p.lattice == LatticeName::A2 ? a2 : z1;
    // Same rate everywhere: N·ν(βΛ) = 1 over two dimensions.
    const double beta = p.lattice == LatticeName::A2 ? std::sqrt(1.0 / (static_cast<double>(p.index) * lat.volume()))
                                                     : 1.0 / static_cast<double>(p.index);
    const Labeling lab = design_for(lat, p.index);
    std::ostringstream row;
    row << to_string(p.lattice) << ',' << p.shown << ',' << p.index << ',' << num(beta) << ','
        << num(analytic_d0(lat, beta)) << ',' << num(analytic_ds(lab, beta)) << '\n';
    return row.str();
  });
  std::string out = "lattice,N_shown,N_index,beta,d0,ds\n";
  for (const auto& r : rows) out += r;
  return out;
}

std::string fig10_csv(const SweepConfig& cfg) {
  std::vector<std::int64_t> per_dim = cfg.indices_given ? cfg.indices : std::vector<std::int64_t>{3, 5, 7};
  std::sort(per_dim.begin(), per_dim.end());
  struct P {
    LatticeName lattice;
    std::int64_t c, N;
  };
  std::vector<P> pts;
  for (auto c : per_dim) {
    if (c < 3 || c % 2 == 0) continue;
    std::int64_t N = 1;
    for (auto name : {LatticeName::Z1, LatticeName::Z2, LatticeName::Z4, LatticeName::Z8}) {
      const int L = Lattice::make(name).dim();
      N = 1;
      for (int i = 0; i < L; ++i) N *= c;
      if (N <= 10'000) pts.push_back({name, c, N});
    }
  }
  auto rows = parallel_map<std::string>(pts.size(), cfg.threads, [&](std::size_t i) {
    const Lattice lat = Lattice::make(pts[i].lattice);
    const Labeling lab = design_for(lat, pts[i].N);
    std::ostringstream row;
    row << to_string(pts[i].lattice) << ',' << lat.dim() << ',' << pts[i].N << ',' << pts[i].c << ','
        << num(lab.mean_excess()) << '\n';
    return row.str();
  });
  std::string out = "lattice,L,N,N_per_dim,excess\n";
  for (const auto& r : rows) out += r;
  return out;
}

std::int64_t default_max_index(LatticeName n) {
  switch (n) {
    case LatticeName::Z4: return 2401;
    case LatticeName::Z8: return 6561;
    default: return 200;
  }
}

std::string asymptotic_csv(const SweepConfig& cfg) {
  const Lattice lat = Lattice::make(cfg.lattice);
  std::vector<std::int64_t> Ns = cfg.indices_given ? cfg.indices : shell_filling_indices(lat, 10'000);
  std::sort(Ns.begin(), Ns.end());
  std::string out = "lattice,N,K,R,beta,d_tilde,ratio,G_sphere,d0,d0_normalized\n";
  const double gs = sphere_second_moment(lat.dim());
  for (const auto& r : asymptotic_limit_check(lat, Ns, cfg.a, cfg.h)) {
    std::ostringstream row;
    row << to_string(lat.name()) << ',' << r.N << ',' << r.K << ',' << num(r.R) << ',' << num(r.beta) << ','
        << num(r.d_tilde) << ',' << num(r.ratio) << ',' << num(gs) << ',' << num(r.d0) << ',' << num(r.d0_normalized)
        << '\n';
    out += row.str();
  }
  return out;
}

std::string sandwich_csv(const SweepConfig& cfg) {
  const Lattice lat = Lattice::make(cfg.lattice);
  std::vector<std::int64_t> Ns = cfg.indices_given ? cfg.indices : design_indices(lat, default_max_index(cfg.lattice));
  std::sort(Ns.begin(), Ns.end());
  auto rows = parallel_map<std::string>(Ns.size(), cfg.threads, [&](std::size_t i) {
    const Labeling lab = design_for(lat, Ns[i]);
    const Sandwich s = bound_sandwich(lab, cfg.beta);
    std::ostringstream row;
    row << to_string(lat.name()) << ',' << Ns[i] << ',' << num(cfg.beta) << ',' << num(s.lower) << ','
        << num(s.mid) << ',' << num(s.upper) << ',' << (s.holds() ? 1 : 0) << '\n';
    return row.str();
  });
  std::string out = "lattice,N,beta,lower,mid,upper,holds\n";
  for (const auto& r : rows) out += r;
  return out;
}

}  // namespace

std::string figure_csv(Figure fig, const SweepConfig& cfg) {
  switch (fig) {
    case Figure::Fig1: return fig1_csv();
    case Figure::Fig9: return fig9_csv(cfg);
    case Figure::Fig10: return fig10_csv(cfg);
    case Figure::Asymptotic: return asymptotic_csv(cfg);
    case Figure::Sandwich: return sandwich_csv(cfg);
  }
  return {};
}

}  // namespace mdlq
