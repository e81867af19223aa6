#include <cmath>

#include "kernels_internal.hpp"
#include "mdlq/kernels.hpp"

namespace mdlq {
namespace {

void round_half_down(const double* x, double inv_beta, std::int64_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::int64_t>(std::ceil(x[i] * inv_beta - 0.5));
}

void nearest_a2(const double* x, const double* y, double inv_beta, std::int64_t* u, std::int64_t* v,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double t = (y[i] * inv_beta) * detail::kTwoOverSqrt3;
    double s = x[i] * inv_beta + t * 0.5;
    double fs = std::floor(s);
    double ft = std::floor(t);
    double ds0 = s - fs;
    double dt0 = t - ft;
    double best = 0.0;
    double bi = 0.0;
    double bj = 0.0;
    bool first = true;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        double ds = ds0 - a;
        double dt = dt0 - b;
        double q = ((ds * ds) - (ds * dt)) + dt * dt;
        if (first || q < best) {
          best = q;
          bi = a;
          bj = b;
          first = false;
        }
      }
    }
    u[i] = static_cast<std::int64_t>(fs + bi);
    v[i] = static_cast<std::int64_t>(ft + bj);
  }
}

double sum_squared_diff(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", round_half_down, nearest_a2, sum_squared_diff};
  return table;
}

}  // namespace mdlq
