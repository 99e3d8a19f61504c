#include <cstdlib>
#include <cstring>

#include "gravodiff/kernels.hpp"

namespace gravodiff::kernels {

#ifndef GRAVODIFF_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* forced = std::getenv("GRAVODIFF_SIMD");
    if (forced && std::strcmp(forced, "scalar") == 0) return scalar_table();
    if (const KernelTable* fast = avx2_table()) return *fast;
    return scalar_table();
  }();
  return chosen;
}

} // namespace gravodiff::kernels
