#include <cmath>

#include "dnwr/kernels.hpp"

namespace dnwr::kernels::scalar {

namespace {

void assemble_rhs(double* out, const double* current, const double* delayed, const double* source,
                  double inv_dt, double delay_coeff, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (current[i] * inv_dt - delay_coeff * delayed[i]) + source[i];
  }
}

void blend(double* out, const double* fresh, const double* old, double theta, std::size_t n) {
  const double keep = 1.0 - theta;
  for (std::size_t i = 0; i < n; ++i) out[i] = theta * fresh[i] + keep * old[i];
}

double max_abs(const double* values, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(values[i]);
    if (a > best) best = a;
  }
  return best;
}

double sum_squares(const double* values, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += values[i] * values[i];
  return sum;
}

}  // namespace

const KernelTable kTable{assemble_rhs, blend, max_abs, sum_squares};

}  // namespace dnwr::kernels::scalar
