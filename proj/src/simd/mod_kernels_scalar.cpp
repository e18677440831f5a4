#include "soergel/simd/mod_kernels.hpp"

namespace soergel::simd {
namespace {

void axpy_scalar(double* dst, const double* src, double c, std::size_t n, std::uint32_t p) {
  const auto cc = static_cast<std::uint64_t>(c);
  for (std::size_t i = 0; i < n; ++i) {
    auto s = static_cast<std::uint64_t>(src[i]);
    if (s == 0) continue;
    auto d = static_cast<std::uint64_t>(dst[i]);
    dst[i] = static_cast<double>((d + cc * s) % p);
  }
}

void scale_scalar(double* row, double c, std::size_t n, std::uint32_t p) {
  const auto cc = static_cast<std::uint64_t>(c);
  for (std::size_t i = 0; i < n; ++i)
    row[i] = static_cast<double>(static_cast<std::uint64_t>(row[i]) * cc % p);
}

}  // namespace

const ModKernels& scalar_kernels() {
  static const ModKernels k{"scalar", axpy_scalar, scale_scalar};
  return k;
}

}  // namespace soergel::simd
