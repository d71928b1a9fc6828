// NEON variants for AArch64, where Advanced SIMD with float64 lanes is baseline.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

#include "dnwr/kernels.hpp"

namespace dnwr::kernels::neon {

namespace {

void assemble_rhs(double* out, const double* current, const double* delayed, const double* source,
                  double inv_dt, double delay_coeff, std::size_t n) {
  const float64x2_t vinv = vdupq_n_f64(inv_dt);
  const float64x2_t va2 = vdupq_n_f64(delay_coeff);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t c = vld1q_f64(current + i);
    const float64x2_t d = vld1q_f64(delayed + i);
    const float64x2_t s = vld1q_f64(source + i);
    vst1q_f64(out + i, vaddq_f64(vsubq_f64(vmulq_f64(c, vinv), vmulq_f64(va2, d)), s));
  }
  for (; i < n; ++i) out[i] = (current[i] * inv_dt - delay_coeff * delayed[i]) + source[i];
}

void blend(double* out, const double* fresh, const double* old, double theta, std::size_t n) {
  const double keep = 1.0 - theta;
  const float64x2_t vt = vdupq_n_f64(theta);
  const float64x2_t vk = vdupq_n_f64(keep);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t f = vld1q_f64(fresh + i);
    const float64x2_t o = vld1q_f64(old + i);
    vst1q_f64(out + i, vaddq_f64(vmulq_f64(vt, f), vmulq_f64(vk, o)));
  }
  for (; i < n; ++i) out[i] = theta * fresh[i] + keep * old[i];
}

double max_abs(const double* values, std::size_t n) {
  float64x2_t best = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) best = vmaxq_f64(best, vabsq_f64(vld1q_f64(values + i)));
  double result = vmaxvq_f64(best);
  for (; i < n; ++i) {
    const double a = std::fabs(values[i]);
    if (a > result) result = a;
  }
  return result;
}

double sum_squares(const double* values, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t a = vld1q_f64(values + i);
    acc = vaddq_f64(acc, vmulq_f64(a, a));
  }
  double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) sum += values[i] * values[i];
  return sum;
}

}  // namespace

const KernelTable kTable{assemble_rhs, blend, max_abs, sum_squares};

}  // namespace dnwr::kernels::neon

#endif
