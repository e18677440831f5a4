#pragma once

#include <cstddef>
#include <cstdint>

// Row kernels for Gaussian elimination over F_p. Rows are arrays of doubles holding
// integers in [0, p). The scalar variant is the reference; vector variants must agree
// with it bit for bit.
namespace soergel::simd {

struct ModKernels {
  const char* name;
  // dst[i] = (dst[i] + c * src[i]) mod p for i < n, with 0 <= c < p.
  void (*axpy)(double* dst, const double* src, double c, std::size_t n, std::uint32_t p);
  // row[i] = (c * row[i]) mod p.
  void (*scale)(double* row, double c, std::size_t n, std::uint32_t p);
};

const ModKernels& scalar_kernels();
// Null when the AVX2 translation unit was not built or the CPU lacks AVX2/FMA.
const ModKernels* avx2_kernels();
// Kernels used for prime p: vector variants need p < 2^26 so products stay exact in doubles.
const ModKernels& kernels_for(std::uint32_t p);
// Force the scalar path (for equivalence tests and benchmarking).
void force_scalar(bool on);

}  // namespace soergel::simd
