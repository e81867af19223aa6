// Compiled with -mavx2; only reached after a runtime CPU check.
#include "mdlq/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace mdlq {
namespace {

// Exact for integral doubles with |v| < 2^51.
inline __m256i integral_to_i64(__m256d v) {
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);  // 1.5 * 2^52
  return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(v, magic)), _mm256_castpd_si256(magic));
}

void round_half_down(const double* x, double inv_beta, std::int64_t* out, std::size_t n) {
  const __m256d ib = _mm256_set1_pd(inv_beta);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_ceil_pd(_mm256_sub_pd(_mm256_mul_pd(_mm256_loadu_pd(x + i), ib), half));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), integral_to_i64(v));
  }
  for (; i < n; ++i) out[i] = static_cast<std::int64_t>(std::ceil(x[i] * inv_beta - 0.5));
}

void nearest_a2_tail(const double* x, const double* y, double inv_beta, std::int64_t* u, std::int64_t* v,
                     std::size_t n) {
  scalar_kernels().nearest_a2(x, y, inv_beta, u, v, n);
}

void nearest_a2(const double* x, const double* y, double inv_beta, std::int64_t* u, std::int64_t* v,
                std::size_t n) {
  const __m256d ib = _mm256_set1_pd(inv_beta);
  const __m256d k = _mm256_set1_pd(detail::kTwoOverSqrt3);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(y + i), ib), k);
    __m256d s = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(x + i), ib), _mm256_mul_pd(t, half));
    __m256d fs = _mm256_floor_pd(s);
    __m256d ft = _mm256_floor_pd(t);
    __m256d ds0 = _mm256_sub_pd(s, fs);
    __m256d dt0 = _mm256_sub_pd(t, ft);

    auto cost = [](__m256d ds, __m256d dt) {
      __m256d q = _mm256_sub_pd(_mm256_mul_pd(ds, ds), _mm256_mul_pd(ds, dt));
      return _mm256_add_pd(q, _mm256_mul_pd(dt, dt));
    };
    __m256d best = cost(ds0, dt0);
    __m256d bi = zero;
    __m256d bj = zero;
    const __m256d ds1 = _mm256_sub_pd(ds0, one);
    const __m256d dt1 = _mm256_sub_pd(dt0, one);
    // Same visiting order and strict comparison as the scalar loop.
    const __m256d cand_ds[3] = {ds0, ds1, ds1};
    const __m256d cand_dt[3] = {dt1, dt0, dt1};
    const __m256d cand_i[3] = {zero, one, one};
    const __m256d cand_j[3] = {one, zero, one};
    for (int c = 0; c < 3; ++c) {
      __m256d q = cost(cand_ds[c], cand_dt[c]);
      __m256d lt = _mm256_cmp_pd(q, best, _CMP_LT_OQ);
      best = _mm256_blendv_pd(best, q, lt);
      bi = _mm256_blendv_pd(bi, cand_i[c], lt);
      bj = _mm256_blendv_pd(bj, cand_j[c], lt);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(u + i), integral_to_i64(_mm256_add_pd(fs, bi)));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(v + i), integral_to_i64(_mm256_add_pd(ft, bj)));
  }
  if (i < n) nearest_a2_tail(x + i, y + i, inv_beta, u + i, v + i, n - i);
}

double sum_squared_diff(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{"avx2", round_half_down, nearest_a2, sum_squared_diff};
  __builtin_cpu_init();
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  return &table;
}

}  // namespace mdlq

#else

namespace mdlq {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace mdlq

#endif
