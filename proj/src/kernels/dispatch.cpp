#include <cstdlib>
#include <string_view>

#include "mdlq/kernels.hpp"

namespace mdlq {

const KernelTable& active_kernels() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("MDLQ_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
    if (const KernelTable* k = avx2_kernels()) return *k;
    if (const KernelTable* k = neon_kernels()) return *k;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace mdlq
