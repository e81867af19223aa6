#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mdlq/labeling.hpp"

namespace mdlq {

inline constexpr int kReportSchema = 1;

// Labeling applied to βΛ and βΛ′.
class ScaledDesign {
 public:
  ScaledDesign(Labeling lab, double beta);

  const Labeling& labeling() const { return lab_; }
  const Lattice& lattice() const { return lab_.lattice(); }
  double beta() const { return beta_; }
  double cell_volume() const;  // ν(βΛ)

  IVec quantize(std::span<const double> x) const;
  DirectedEdge encode_vector(std::span<const double> x) const;
  std::vector<double> embed(const IVec& u) const;  // β·G·u

 private:
  Labeling lab_;
  double beta_;
};

enum class Received { Both, Channel1, Channel2 };

// Both: the decoded fine point; one channel: that channel's label.
std::vector<double> reconstruct(const ScaledDesign& d, Received which, const DirectedEdge& payload);

struct SourceModel {
  enum class Kind { Uniform, Gaussian, PeriodicCell };
  Kind kind = Kind::Uniform;
  // Uniform: half-width per coordinate. Gaussian: σ. PeriodicCell: the
  // number k of sublattice periods per basis direction.
  double param = 1.0;

  static SourceModel parse(std::string_view spec);  // uniform:W | gauss:S | periodic:K
  std::string to_string() const;
  // Differential entropy per dimension, bits. The periodic source is uniform
  // on k times a fundamental cell of βΛ′.
  double entropy_bits(const ScaledDesign& d) const;
};

struct SimReport {
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  double d0 = 0, d1 = 0, d2 = 0, ds = 0;
  double H0 = 0, H1 = 0, H2 = 0;  // empirical entropies per dimension, bits
  double h = 0;                   // source entropy per dimension
  double R0_analytic = 0, R_analytic = 0;
  double d0_analytic = 0, ds_analytic = 0;
};

// Monte-Carlo run. Samples come in fixed chunks, each with its own stream
// derived from (seed, chunk), and are combined in chunk order, so the
// result does not depend on the thread count. For the periodic source,
// points and labels are counted modulo kβΛ′.
SimReport simulate(const ScaledDesign& d, const SourceModel& src, std::int64_t n, std::uint64_t seed,
                   int threads = 1);

nlohmann::json report_to_json(const ScaledDesign& d, const SourceModel& src, const SimReport& r);

}  // namespace mdlq
