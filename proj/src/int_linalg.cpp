#include "mdlq/int_linalg.hpp"

#include <numeric>
#include <sstream>
#include <utility>

#include "mdlq/error.hpp"

namespace mdlq {

IVec::IVec(std::initializer_list<std::int64_t> xs) : dim(static_cast<int>(xs.size())) {
  if (xs.size() > kMaxDim) throw Error(ErrorCode::InvalidArgument, "vector dimension above 8");
  std::size_t i = 0;
  for (auto x : xs) c[i++] = x;
}

IVec IVec::from_span(std::span<const std::int64_t> xs) {
  if (xs.size() > kMaxDim) throw Error(ErrorCode::InvalidArgument, "vector dimension above 8");
  IVec v(static_cast<int>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v.c[i] = xs[i];
  return v;
}

bool IVec::is_zero() const {
  for (int i = 0; i < dim; ++i)
    if ((*this)[i] != 0) return false;
  return true;
}

IVec& IVec::operator+=(const IVec& o) {
  for (int i = 0; i < dim; ++i) (*this)[i] += o[i];
  return *this;
}

IVec& IVec::operator-=(const IVec& o) {
  for (int i = 0; i < dim; ++i) (*this)[i] -= o[i];
  return *this;
}

IVec operator-(IVec a) {
  for (int i = 0; i < a.dim; ++i) a[i] = -a[i];
  return a;
}

IVec operator*(std::int64_t k, IVec a) {
  for (int i = 0; i < a.dim; ++i) a[i] *= k;
  return a;
}

std::ostream& operator<<(std::ostream& os, const IVec& v) {
  os << '(';
  for (int i = 0; i < v.dim; ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

std::string to_string(const IVec& v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

std::size_t IVecHash::operator()(const IVec& v) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(v.dim);
  for (int i = 0; i < v.dim; ++i) {
    h ^= static_cast<std::uint64_t>(v[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

IMat::IMat(int dim, std::initializer_list<std::int64_t> rows) : n(dim) {
  if (rows.size() != static_cast<std::size_t>(dim * dim))
    throw Error(ErrorCode::InvalidArgument, "matrix literal size");
  int k = 0;
  for (auto x : rows) {
    (*this)(k / dim, k % dim) = x;
    ++k;
  }
}

IMat IMat::identity(int dim) {
  IMat m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

IMat IMat::from_columns(std::span<const IVec> cols) {
  IMat m(static_cast<int>(cols.size()));
  for (int j = 0; j < m.n; ++j)
    for (int i = 0; i < m.n; ++i) m(i, j) = cols[static_cast<std::size_t>(j)][i];
  return m;
}

IVec IMat::column(int j) const {
  IVec v(n);
  for (int i = 0; i < n; ++i) v[i] = (*this)(i, j);
  return v;
}

IMat IMat::transpose() const {
  IMat t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IMat::is_diagonal() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

// Fraction-free Bareiss elimination.
std::int64_t IMat::det() const {
  if (n == 0) return 1;
  std::array<__int128, kMaxDim * kMaxDim> w{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(i * kMaxDim + j)] = (*this)(i, j);
  auto at = [&](int i, int j) -> __int128& { return w[static_cast<std::size_t>(i * kMaxDim + j)]; };
  int sign = 1;
  __int128 prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    }
    prev = at(k, k);
  }
  return static_cast<std::int64_t>(sign * at(n - 1, n - 1));
}

IMat IMat::adjugate() const {
  IMat adj(n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      IMat minor(n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int s = 0, ss = 0; s < n; ++s) {
          if (s == j) continue;
          minor(rr, ss++) = (*this)(r, s);
        }
        ++rr;
      }
      std::int64_t cof = minor.det();
      adj(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  }
  return adj;
}

IMat operator*(const IMat& x, const IMat& y) {
  IMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      std::int64_t xik = x(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < x.n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

IVec operator*(const IMat& m, const IVec& v) {
  IVec r(m.n);
  for (int i = 0; i < m.n; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < m.n; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

IMat operator-(const IMat& x, const IMat& y) {
  IMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) r(i, j) = x(i, j) - y(i, j);
  return r;
}

IMat operator-(const IMat& x) { return IMat(x.n) - x; }

std::ostream& operator<<(std::ostream& os, const IMat& m) {
  os << '[';
  for (int i = 0; i < m.n; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < m.n; ++j) os << (j ? " " : "") << m(i, j);
  }
  return os << ']';
}

std::int64_t bilinear(const IMat& q, const IVec& v, const IVec& w) {
  std::int64_t s = 0;
  for (int i = 0; i < q.n; ++i) {
    if (v[i] == 0) continue;
    std::int64_t row = 0;
    for (int j = 0; j < q.n; ++j) row += q(i, j) * w[j];
    s += v[i] * row;
  }
  return s;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t b) { return a - b * floor_div(a, b); }

IMat hermite_lower(const IMat& m) {
  IMat h = m;
  const int n = h.n;
  auto col_axpy = [&](int dst, std::int64_t k, int src) {
    for (int r = 0; r < n; ++r) h(r, dst) -= k * h(r, src);
  };
  auto col_swap = [&](int a, int b) {
    for (int r = 0; r < n; ++r) std::swap(h(r, a), h(r, b));
  };
  for (int i = 0; i < n; ++i) {
    // Euclid on row i across columns i..n-1 until only column i is nonzero.
    for (;;) {
      int piv = -1;
      for (int j = i; j < n; ++j)
        if (h(i, j) != 0 && (piv < 0 || std::abs(h(i, j)) < std::abs(h(i, piv)))) piv = j;
      if (piv < 0) throw Error(ErrorCode::InvalidArgument, "singular matrix in Hermite form");
      if (piv != i) col_swap(i, piv);
      bool done = true;
      for (int j = i + 1; j < n; ++j) {
        if (h(i, j) == 0) continue;
        col_axpy(j, h(i, j) / h(i, i), i);
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(i, i) < 0)
      for (int r = 0; r < n; ++r) h(r, i) = -h(r, i);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) col_axpy(j, floor_div(h(i, j), h(i, i)), i);
  return h;
}

}  // namespace mdlq
