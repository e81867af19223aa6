#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace mdlq {

// Batch kernels on the simulation hot path. Every variant must agree with
// the scalar reference: quantizers bit-for-bit, sums to rounding.
//
// Quantizer inputs are scaled by inv_beta first and must satisfy
// |x * inv_beta| < 2^50.
struct KernelTable {
  std::string_view name;
  // out[i] = ceil(x[i]*inv_beta - 0.5): nearest integer, halves go down.
  void (*round_half_down)(const double* x, double inv_beta, std::int64_t* out, std::size_t n);
  // Nearest A2 point (basis 1, ω) to each (x[i], y[i]) after scaling.
  void (*nearest_a2)(const double* x, const double* y, double inv_beta, std::int64_t* u,
                     std::int64_t* v, std::size_t n);
  // Σ (a[i] - b[i])².
  double (*sum_squared_diff)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the variant is not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Best available variant; MDLQ_SIMD=scalar forces the reference.
const KernelTable& active_kernels();

}  // namespace mdlq
