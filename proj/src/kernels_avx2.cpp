#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "cpvol/kernels.hpp"

namespace cpvol::kern {

// Separate mul + add on purpose: keeps results bit-identical to the scalar
// kernel (an FMA would round once instead of twice).
__attribute__((target("avx2"))) void axpy_avx2(double* dst, const double* src, double w,
                                               std::size_t len) {
  const __m256d vw = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256d a0 = _mm256_loadu_pd(dst + i);
    __m256d a1 = _mm256_loadu_pd(dst + i + 4);
    __m256d b0 = _mm256_mul_pd(vw, _mm256_loadu_pd(src + i));
    __m256d b1 = _mm256_mul_pd(vw, _mm256_loadu_pd(src + i + 4));
    _mm256_storeu_pd(dst + i, _mm256_add_pd(a0, b0));
    _mm256_storeu_pd(dst + i + 4, _mm256_add_pd(a1, b1));
  }
  for (; i + 4 <= len; i += 4) {
    __m256d a = _mm256_loadu_pd(dst + i);
    __m256d b = _mm256_mul_pd(vw, _mm256_loadu_pd(src + i));
    _mm256_storeu_pd(dst + i, _mm256_add_pd(a, b));
  }
  for (; i < len; ++i) dst[i] += w * src[i];
}

}  // namespace cpvol::kern

#endif
