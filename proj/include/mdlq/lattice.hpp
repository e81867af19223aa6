#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mdlq/int_linalg.hpp"

namespace mdlq {

enum class LatticeName { Z1, Z2, Z4, Z8, A2 };

std::string_view to_string(LatticeName name);
LatticeName parse_lattice(std::string_view text);  // throws InvalidArgument

// A[i] counts points with unnormalized squared norm i (that is, L·‖λ‖² = i).
struct ThetaShells {
  std::vector<std::int64_t> A;
  std::int64_t S(std::size_t m) const;  // Σ_{i≤m} A[i]
  // (norm, count) for the shells that contain points.
  std::vector<std::pair<std::int64_t, std::int64_t>> nonempty() const;
};

// One of the five supported lattices at unit scale (minimal length 1).
// Points are integer coordinate vectors in the lattice basis. Exact
// geometry goes through the integer form Q: the unnormalized squared norm
// of u is uᵀQu / s, and the normalized one divides that by L.
class Lattice {
 public:
  static Lattice make(LatticeName name);

  LatticeName name() const { return name_; }
  int dim() const { return dim_; }
  const IMat& gram() const { return gram_; }
  std::int64_t gram_scale() const { return scale_; }
  // Row-major L×L; columns are the basis vectors.
  const std::vector<double>& generator() const { return gen_; }
  double volume() const { return volume_; }

  std::int64_t form(const IVec& u) const { return quad(gram_, u); }
  std::int64_t shell_index(const IVec& u) const { return form(u) / scale_; }
  double sq_norm(const IVec& u) const;

  std::vector<double> embed(const IVec& u) const;
  void embed(const IVec& u, double* out) const;

  // Nearest lattice point; equidistant candidates resolve to the
  // lexicographically smallest coordinate vector.
  IVec nearest_point(std::span<const double> x) const;

  ThetaShells shells(std::int64_t max_norm, std::size_t cap = 20'000'000) const;
  // All points with shell index ≤ max_norm, sorted by (index, coordinates).
  std::vector<IVec> points_within(std::int64_t max_norm, std::size_t cap = 20'000'000) const;

  // Squared covering radius under the normalized norm.
  double covering_radius_sq() const;

 private:
  LatticeName name_ = LatticeName::Z1;
  int dim_ = 1;
  IMat gram_;
  std::int64_t scale_ = 1;
  std::vector<double> gen_;
  double volume_ = 1.0;
};

// Normalized second moment of the Voronoi cell of beta·Λ.
double second_moment_G(const Lattice& lat, double beta = 1.0);
double sphere_second_moment(int L);
double unit_ball_volume(int L);

// Vertices (counter-clockwise) of the Voronoi cell of beta·Λ for L = 2.
std::vector<std::array<double, 2>> voronoi_polygon(const Lattice& lat, double beta = 1.0);

}  // namespace mdlq
