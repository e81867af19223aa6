#include "mdlq/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace mdlq {
namespace {

void round_half_down(const double* x, double inv_beta, std::int64_t* out, std::size_t n) {
  const float64x2_t ib = vdupq_n_f64(inv_beta);
  const float64x2_t half = vdupq_n_f64(0.5);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = vrndpq_f64(vsubq_f64(vmulq_f64(vld1q_f64(x + i), ib), half));
    vst1q_s64(out + i, vcvtq_s64_f64(v));
  }
  for (; i < n; ++i) out[i] = static_cast<std::int64_t>(std::ceil(x[i] * inv_beta - 0.5));
}

void nearest_a2(const double* x, const double* y, double inv_beta, std::int64_t* u, std::int64_t* v,
                std::size_t n) {
  const float64x2_t ib = vdupq_n_f64(inv_beta);
  const float64x2_t k = vdupq_n_f64(detail::kTwoOverSqrt3);
  const float64x2_t half = vdupq_n_f64(0.5);
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t t = vmulq_f64(vmulq_f64(vld1q_f64(y + i), ib), k);
    float64x2_t s = vaddq_f64(vmulq_f64(vld1q_f64(x + i), ib), vmulq_f64(t, half));
    float64x2_t fs = vrndmq_f64(s);
    float64x2_t ft = vrndmq_f64(t);
    float64x2_t ds0 = vsubq_f64(s, fs);
    float64x2_t dt0 = vsubq_f64(t, ft);
    auto cost = [](float64x2_t ds, float64x2_t dt) {
      float64x2_t q = vsubq_f64(vmulq_f64(ds, ds), vmulq_f64(ds, dt));
      return vaddq_f64(q, vmulq_f64(dt, dt));
    };
    float64x2_t best = cost(ds0, dt0);
    float64x2_t bi = zero;
    float64x2_t bj = zero;
    const float64x2_t ds1 = vsubq_f64(ds0, one);
    const float64x2_t dt1 = vsubq_f64(dt0, one);
    const float64x2_t cand_ds[3] = {ds0, ds1, ds1};
    const float64x2_t cand_dt[3] = {dt1, dt0, dt1};
    const float64x2_t cand_i[3] = {zero, one, one};
    const float64x2_t cand_j[3] = {one, zero, one};
    for (int c = 0; c < 3; ++c) {
      float64x2_t q = cost(cand_ds[c], cand_dt[c]);
      uint64x2_t lt = vcltq_f64(q, best);
      best = vbslq_f64(lt, q, best);
      bi = vbslq_f64(lt, cand_i[c], bi);
      bj = vbslq_f64(lt, cand_j[c], bj);
    }
    vst1q_s64(u + i, vcvtq_s64_f64(vaddq_f64(fs, bi)));
    vst1q_s64(v + i, vcvtq_s64_f64(vaddq_f64(ft, bj)));
  }
  if (i < n) scalar_kernels().nearest_a2(x + i, y + i, inv_beta, u + i, v + i, n - i);
}

double sum_squared_diff(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

const KernelTable* neon_kernels() {
  static const KernelTable table{"neon", round_half_down, nearest_a2, sum_squared_diff};
  return &table;
}

}  // namespace mdlq

#else

namespace mdlq {
const KernelTable* neon_kernels() { return nullptr; }
}  // namespace mdlq

#endif
