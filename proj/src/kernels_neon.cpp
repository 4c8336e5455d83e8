#if defined(__aarch64__)

#include <arm_neon.h>

#include "cpvol/kernels.hpp"

namespace cpvol::kern {

// vmulq + vaddq (not vfmaq) so the rounding matches the scalar kernel.
void axpy_neon(double* dst, const double* src, double w, std::size_t len) {
  const float64x2_t vw = vdupq_n_f64(w);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    float64x2_t a0 = vld1q_f64(dst + i);
    float64x2_t a1 = vld1q_f64(dst + i + 2);
    float64x2_t b0 = vmulq_f64(vw, vld1q_f64(src + i));
    float64x2_t b1 = vmulq_f64(vw, vld1q_f64(src + i + 2));
    vst1q_f64(dst + i, vaddq_f64(a0, b0));
    vst1q_f64(dst + i + 2, vaddq_f64(a1, b1));
  }
  for (; i + 2 <= len; i += 2) {
    float64x2_t a = vld1q_f64(dst + i);
    float64x2_t b = vmulq_f64(vw, vld1q_f64(src + i));
    vst1q_f64(dst + i, vaddq_f64(a, b));
  }
  for (; i < len; ++i) dst[i] += w * src[i];
}

}  // namespace cpvol::kern

#endif
