// AVX2 variants. Compiled with function-level target attributes so the rest of
// the translation unit (and any inline code it pulls in) stays baseline x86-64.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "dnwr/kernels.hpp"

namespace dnwr::kernels::avx2 {

namespace {

#define DNWR_AVX2 __attribute__((target("avx2")))

DNWR_AVX2 void assemble_rhs(double* out, const double* current, const double* delayed,
                            const double* source, double inv_dt, double delay_coeff,
                            std::size_t n) {
  const __m256d vinv = _mm256_set1_pd(inv_dt);
  const __m256d va2 = _mm256_set1_pd(delay_coeff);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d c = _mm256_loadu_pd(current + i);
    const __m256d d = _mm256_loadu_pd(delayed + i);
    const __m256d s = _mm256_loadu_pd(source + i);
    const __m256d r = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(c, vinv), _mm256_mul_pd(va2, d)), s);
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = (current[i] * inv_dt - delay_coeff * delayed[i]) + source[i];
}

DNWR_AVX2 void blend(double* out, const double* fresh, const double* old, double theta,
                     std::size_t n) {
  const double keep = 1.0 - theta;
  const __m256d vt = _mm256_set1_pd(theta);
  const __m256d vk = _mm256_set1_pd(keep);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d f = _mm256_loadu_pd(fresh + i);
    const __m256d o = _mm256_loadu_pd(old + i);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(vt, f), _mm256_mul_pd(vk, o)));
  }
  for (; i < n; ++i) out[i] = theta * fresh[i] + keep * old[i];
}

DNWR_AVX2 double max_abs(const double* values, std::size_t n) {
  // Clearing the sign bit is |x| for every finite input.
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_andnot_pd(sign, _mm256_loadu_pd(values + i));
    best = _mm256_max_pd(a, best);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double result = lanes[0];
  for (int k = 1; k < 4; ++k) result = lanes[k] > result ? lanes[k] : result;
  for (; i < n; ++i) {
    const double a = std::fabs(values[i]);
    if (a > result) result = a;
  }
  return result;
}

DNWR_AVX2 double sum_squares(const double* values, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a = _mm256_loadu_pd(values + i);
    const __m256d b = _mm256_loadu_pd(values + i + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, a));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(b, b));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(values + i);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, a));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) sum += values[i] * values[i];
  return sum;
}

#undef DNWR_AVX2

}  // namespace

const KernelTable kTable{assemble_rhs, blend, max_abs, sum_squares};

}  // namespace dnwr::kernels::avx2

#endif
