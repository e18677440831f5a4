#include <atomic>

#include "soergel/simd/mod_kernels.hpp"

namespace soergel::simd {

#ifndef SOERGEL_HAVE_AVX2
const ModKernels* avx2_kernels() { return nullptr; }
#endif

namespace {
std::atomic<bool> g_force_scalar{false};
}

void force_scalar(bool on) { g_force_scalar = on; }

const ModKernels& kernels_for(std::uint32_t p) {
  if (!g_force_scalar && p < (1u << 26)) {
    if (const ModKernels* k = avx2_kernels()) return *k;
  }
  return scalar_kernels();
}

}  // namespace soergel::simd
