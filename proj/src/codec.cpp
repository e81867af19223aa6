#include "mdlq/codec.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <thread>

#include "mdlq/error.hpp"
#include "mdlq/eval.hpp"
#include "mdlq/kernels.hpp"

namespace mdlq {

ScaledDesign::ScaledDesign(Labeling lab, double beta) : lab_(std::move(lab)), beta_(beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::InvalidArgument, "beta must be positive");
}

double ScaledDesign::cell_volume() const { return std::pow(beta_, lattice().dim()) * lattice().volume(); }

IVec ScaledDesign::quantize(std::span<const double> x) const {
  std::vector<double> y(x.begin(), x.end());
  for (auto& v : y) v /= beta_;
  return lattice().nearest_point(y);
}

DirectedEdge ScaledDesign::encode_vector(std::span<const double> x) const { return lab_.encode(quantize(x)); }

std::vector<double> ScaledDesign::embed(const IVec& u) const {
  auto v = lattice().embed(u);
  for (auto& c : v) c *= beta_;
  return v;
}

std::vector<double> reconstruct(const ScaledDesign& d, Received which, const DirectedEdge& payload) {
  switch (which) {
    case Received::Both: return d.embed(d.labeling().decode_both(payload));
    case Received::Channel1: return d.embed(decode_side(payload.first));
    case Received::Channel2: return d.embed(decode_side(payload.second));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown channel state");
}

SourceModel SourceModel::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::InvalidArgument, "source must look like kind:value, got '" + std::string(spec) + "'");
  const std::string kind(spec.substr(0, colon));
  const std::string value(spec.substr(colon + 1));
  SourceModel s;
  try {
    std::size_t used = 0;
    s.param = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "bad source parameter '" + value + "'");
  }
  if (kind == "uniform") {
    s.kind = Kind::Uniform;
  } else if (kind == "gauss") {
    s.kind = Kind::Gaussian;
  } else if (kind == "periodic") {
    s.kind = Kind::PeriodicCell;
    if (s.param != std::floor(s.param)) throw Error(ErrorCode::InvalidArgument, "periodic source needs an integer");
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown source kind '" + kind + "'");
  }
  if (!(s.param > 0.0) || !std::isfinite(s.param))
    throw Error(ErrorCode::InvalidArgument, "source parameter must be positive");
  return s;
}

std::string SourceModel::to_string() const {
  const char* k = kind == Kind::Uniform ? "uniform" : (kind == Kind::Gaussian ? "gauss" : "periodic");
  nlohmann::json j = param;  // shortest round-trip form
  return std::string(k) + ":" + j.dump();
}

double SourceModel::entropy_bits(const ScaledDesign& d) const {
  const int L = d.lattice().dim();
  switch (kind) {
    case Kind::Uniform: return std::log2(2.0 * param);
    case Kind::Gaussian: return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * param * param);
    case Kind::PeriodicCell: {
      const double vol = std::pow(param, L) * static_cast<double>(d.labeling().index()) * d.cell_volume();
      return std::log2(vol) / L;
    }
  }
  return 0.0;
}

namespace {

constexpr std::int64_t kChunk = 65536;

struct ChunkResult {
  double s0 = 0, s1 = 0, s2 = 0;
  std::map<IVec, std::int64_t> c0, c1, c2;
};

double entropy_of(const std::map<IVec, std::int64_t>& counts, std::int64_t n) {
  double h = 0.0;
  for (const auto& [k, c] : counts) {
    double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return h;
}

void merge_into(std::map<IVec, std::int64_t>& dst, const std::map<IVec, std::int64_t>& src) {
  for (const auto& [k, c] : src) dst[k] += c;
}

}  // namespace

SimReport simulate(const ScaledDesign& d, const SourceModel& src, std::int64_t n, std::uint64_t seed, int threads) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  const Labeling& lab = d.labeling();
  const Lattice& lat = d.lattice();
  const SimilarSublattice& sub = lab.sublattice();
  const int L = lat.dim();
  const auto Lz = static_cast<std::size_t>(L);
  const double beta = d.beta();
  const KernelTable& kern = active_kernels();
  const bool periodic = src.kind == SourceModel::Kind::PeriodicCell;
  const auto period = static_cast<std::int64_t>(src.param);

  // β·G·M maps sublattice coordinates to space.
  std::vector<double> cellmap(Lz * Lz, 0.0);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      double s = 0.0;
      for (int k = 0; k < L; ++k)
        s += lat.generator()[static_cast<std::size_t>(i * L + k)] * static_cast<double>(sub.basis()(k, j));
      cellmap[static_cast<std::size_t>(i * L + j)] = beta * s;
    }

  const std::int64_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<ChunkResult> results(static_cast<std::size_t>(chunks));

  auto run_chunk = [&](std::int64_t c) {
    const std::int64_t m = std::min(kChunk, n - c * kChunk);
    const auto mz = static_cast<std::size_t>(m);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) >> 32)};
    std::mt19937_64 rng(seq);
    auto u01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::normal_distribution<double> gauss(0.0, src.param);

    std::vector<double> x(mz * Lz);
    if (src.kind == SourceModel::Kind::Uniform) {
      for (auto& v : x) v = src.param * (2.0 * u01() - 1.0);
    } else if (src.kind == SourceModel::Kind::Gaussian) {
      for (auto& v : x) v = gauss(rng);
    } else {
      std::vector<double> w(Lz);
      for (std::size_t s = 0; s < mz; ++s) {
        for (auto& wv : w) wv = src.param * u01();
        for (std::size_t i = 0; i < Lz; ++i) {
          double acc = 0.0;
          for (std::size_t j = 0; j < Lz; ++j) acc += cellmap[i * Lz + j] * w[j];
          x[s * Lz + i] = acc;
        }
      }
    }

    std::vector<std::int64_t> q(mz * Lz);
    if (lat.name() == LatticeName::A2) {
      std::vector<double> xs(mz), ys(mz);
      std::vector<std::int64_t> us(mz), vs(mz);
      for (std::size_t s = 0; s < mz; ++s) {
        xs[s] = x[2 * s];
        ys[s] = x[2 * s + 1];
      }
      kern.nearest_a2(xs.data(), ys.data(), 1.0 / beta, us.data(), vs.data(), mz);
      for (std::size_t s = 0; s < mz; ++s) {
        q[2 * s] = us[s];
        q[2 * s + 1] = vs[s];
      }
    } else {
      kern.round_half_down(x.data(), 1.0 / beta, q.data(), mz * Lz);
    }

    ChunkResult r;
    std::vector<double> rec0(mz * Lz), rec1(mz * Lz), rec2(mz * Lz);
    for (std::size_t s = 0; s < mz; ++s) {
      IVec lam(L);
      for (int i = 0; i < L; ++i) lam[i] = q[s * Lz + static_cast<std::size_t>(i)];
      const DirectedEdge de = lab.encode(lam);
      lat.embed(lam, &rec0[s * Lz]);
      lat.embed(de.first, &rec1[s * Lz]);
      lat.embed(de.second, &rec2[s * Lz]);
      if (periodic) {
        ++r.c0[sub.box_reduce(lam, period)];
        ++r.c1[sub.box_reduce(de.first, period)];
        ++r.c2[sub.box_reduce(de.second, period)];
      } else {
        ++r.c0[lam];
        ++r.c1[de.first];
        ++r.c2[de.second];
      }
    }
    for (auto* rec : {&rec0, &rec1, &rec2})
      for (auto& v : *rec) v *= beta;
    r.s0 = kern.sum_squared_diff(x.data(), rec0.data(), mz * Lz);
    r.s1 = kern.sum_squared_diff(x.data(), rec1.data(), mz * Lz);
    r.s2 = kern.sum_squared_diff(x.data(), rec2.data(), mz * Lz);
    results[static_cast<std::size_t>(c)] = std::move(r);
  };

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
  if (workers == 1) {
    for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&]() {
        for (std::int64_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    for (auto& t : pool) t.join();
  }

  SimReport rep;
  rep.n = n;
  rep.seed = seed;
  double s0 = 0, s1 = 0, s2 = 0;
  std::map<IVec, std::int64_t> c0, c1, c2;
  for (const auto& r : results) {
    s0 += r.s0;
    s1 += r.s1;
    s2 += r.s2;
    merge_into(c0, r.c0);
    merge_into(c1, r.c1);
    merge_into(c2, r.c2);
  }
  const double denom = static_cast<double>(n) * L;
  rep.d0 = s0 / denom;
  rep.d1 = s1 / denom;
  rep.d2 = s2 / denom;
  rep.ds = 0.5 * (rep.d1 + rep.d2);
  rep.H0 = entropy_of(c0, n) / L;
  rep.H1 = entropy_of(c1, n) / L;
  rep.H2 = entropy_of(c2, n) / L;
  rep.h = src.entropy_bits(d);
  const Rates rates = analytic_rates(lat, lab.index(), beta, rep.h);
  rep.R0_analytic = rates.R0;
  rep.R_analytic = rates.R;
  rep.d0_analytic = analytic_d0(lat, beta);
  rep.ds_analytic = analytic_ds(lab, beta);
  return rep;
}

nlohmann::json report_to_json(const ScaledDesign& d, const SourceModel& src, const SimReport& r) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["design"] = {{"lattice", std::string(to_string(d.lattice().name()))},
                 {"params", d.labeling().sublattice().params()},
                 {"index", d.labeling().index()},
                 {"beta", d.beta()}};
  j["source"] = src.to_string();
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["d0"] = r.d0;
  j["d1"] = r.d1;
  j["d2"] = r.d2;
  j["ds"] = r.ds;
  j["H0"] = r.H0;
  j["H1"] = r.H1;
  j["H2"] = r.H2;
  j["h"] = r.h;
  j["R0_analytic"] = r.R0_analytic;
  j["R_analytic"] = r.R_analytic;
  j["d0_analytic"] = r.d0_analytic;
  j["ds_analytic"] = r.ds_analytic;
  return j;
}

}  // namespace mdlq
