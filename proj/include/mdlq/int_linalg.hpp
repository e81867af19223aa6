#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>

namespace mdlq {

inline constexpr int kMaxDim = 8;

// Integer vector with a fixed capacity; unused slots stay zero so that
// defaulted comparison is lexicographic over the live coordinates.
struct IVec {
  std::array<std::int64_t, kMaxDim> c{};
  int dim = 0;

  IVec() = default;
  explicit IVec(int n) : dim(n) {}
  IVec(std::initializer_list<std::int64_t> xs);
  static IVec from_span(std::span<const std::int64_t> xs);

  std::int64_t& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  std::int64_t operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  int size() const { return dim; }
  bool is_zero() const;

  friend bool operator==(const IVec&, const IVec&) = default;
  friend auto operator<=>(const IVec& a, const IVec& b) {
    if (auto r = a.dim <=> b.dim; r != 0) return r;
    return a.c <=> b.c;
  }

  IVec& operator+=(const IVec& o);
  IVec& operator-=(const IVec& o);
  friend IVec operator+(IVec a, const IVec& b) { return a += b; }
  friend IVec operator-(IVec a, const IVec& b) { return a -= b; }
  friend IVec operator-(IVec a);
  friend IVec operator*(std::int64_t k, IVec a);
};

std::ostream& operator<<(std::ostream& os, const IVec& v);
std::string to_string(const IVec& v);

struct IVecHash {
  std::size_t operator()(const IVec& v) const noexcept;
};

// Square integer matrix, row-major.
struct IMat {
  std::array<std::int64_t, kMaxDim * kMaxDim> a{};
  int n = 0;

  IMat() = default;
  explicit IMat(int dim) : n(dim) {}
  IMat(int dim, std::initializer_list<std::int64_t> rows);
  static IMat identity(int dim);
  static IMat from_columns(std::span<const IVec> cols);

  std::int64_t& operator()(int i, int j) { return a[static_cast<std::size_t>(i * kMaxDim + j)]; }
  std::int64_t operator()(int i, int j) const { return a[static_cast<std::size_t>(i * kMaxDim + j)]; }

  IVec column(int j) const;
  IMat transpose() const;
  std::int64_t det() const;
  IMat adjugate() const;  // adj(A)·A = det(A)·I
  bool is_diagonal() const;

  friend bool operator==(const IMat&, const IMat&) = default;
  friend auto operator<=>(const IMat& x, const IMat& y) {
    if (auto r = x.n <=> y.n; r != 0) return r;
    return x.a <=> y.a;
  }
  friend IMat operator*(const IMat& x, const IMat& y);
  friend IVec operator*(const IMat& m, const IVec& v);
  friend IMat operator-(const IMat& x, const IMat& y);
  friend IMat operator-(const IMat& x);
};

std::ostream& operator<<(std::ostream& os, const IMat& m);

// Quadratic form vᵀQw.
std::int64_t bilinear(const IMat& q, const IVec& v, const IVec& w);
inline std::int64_t quad(const IMat& q, const IVec& v) { return bilinear(q, v, v); }

// Lower-triangular column Hermite form H with HZ^L = MZ^L and positive
// diagonal. Entries below the diagonal are reduced into [0, h_ii).
IMat hermite_lower(const IMat& m);

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t b);

}  // namespace mdlq
