// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "soergel/simd/mod_kernels.hpp"

namespace soergel::simd {
namespace {

inline __m256d reduce(__m256d t, __m256d vp, __m256d vpinv) {
  // t is an exact integer with |t| < 2^53; q may be off by one, fixed below
  __m256d q = _mm256_floor_pd(_mm256_mul_pd(t, vpinv));
  __m256d r = _mm256_fnmadd_pd(q, vp, t);
  __m256d neg = _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ);
  r = _mm256_add_pd(r, _mm256_and_pd(neg, vp));
  __m256d big = _mm256_cmp_pd(r, vp, _CMP_GE_OQ);
  return _mm256_sub_pd(r, _mm256_and_pd(big, vp));
}

inline double reduce1(double t, double p, double pinv) {
  double q = __builtin_floor(t * pinv);
  double r = __builtin_fma(-q, p, t);
  if (r < 0) r += p;
  if (r >= p) r -= p;
  return r;
}

void axpy_avx2(double* dst, const double* src, double c, std::size_t n, std::uint32_t p) {
  const double dp = p, pinv = 1.0 / dp;
  const __m256d vp = _mm256_set1_pd(dp), vpinv = _mm256_set1_pd(pinv), vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_loadu_pd(src + i);
    __m256d d = _mm256_loadu_pd(dst + i);
    _mm256_storeu_pd(dst + i, reduce(_mm256_fmadd_pd(vc, s, d), vp, vpinv));
  }
  for (; i < n; ++i) dst[i] = reduce1(__builtin_fma(c, src[i], dst[i]), dp, pinv);
}

void scale_avx2(double* row, double c, std::size_t n, std::uint32_t p) {
  const double dp = p, pinv = 1.0 / dp;
  const __m256d vp = _mm256_set1_pd(dp), vpinv = _mm256_set1_pd(pinv), vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(row + i, reduce(_mm256_mul_pd(vc, _mm256_loadu_pd(row + i)), vp, vpinv));
  for (; i < n; ++i) row[i] = reduce1(c * row[i], dp, pinv);
}

}  // namespace

const ModKernels* avx2_kernels() {
  static const ModKernels k{"avx2", axpy_avx2, scale_avx2};
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &k : nullptr;
}

}  // namespace soergel::simd
