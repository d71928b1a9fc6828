#pragma once

// Data-parallel inner loops of the solver. Each kernel has a scalar reference
// implementation and vector variants (AVX2 on x86-64, NEON on AArch64); the
// variant is chosen once at startup from the running CPU.
//
// Contract shared by all variants:
// - Unaligned loads/stores only; callers need not align buffers.
// - Element-wise kernels (assemble_rhs, blend) evaluate the same expression tree
//   per element as the scalar code with no FMA contraction, so every variant is
//   bit-identical to the scalar reference.
// - max_abs is exact, hence bit-identical too. sum_squares reassociates the sum
//   across lanes and agrees with the scalar reference to rounding only.

#include <cstddef>
#include <span>
#include <string_view>

namespace dnwr::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct KernelTable {
  /// out[i] = (current[i] * inv_dt - delay_coeff * delayed[i]) + source[i]
  void (*assemble_rhs)(double* out, const double* current, const double* delayed,
                       const double* source, double inv_dt, double delay_coeff, std::size_t n);
  /// out[i] = theta * fresh[i] + (1 - theta) * old[i]
  void (*blend)(double* out, const double* fresh, const double* old, double theta, std::size_t n);
  double (*max_abs)(const double* values, std::size_t n);
  double (*sum_squares)(const double* values, std::size_t n);
};

/// True when the variant was compiled in and the CPU supports it.
bool isa_available(Isa isa);

/// Throws dnwr::InvalidArgument when the variant is unavailable.
const KernelTable& table(Isa isa);

/// Best available variant, unless the environment variable DNWR_SIMD names
/// another one ("scalar", "avx2", "neon").
Isa active_isa();
const KernelTable& active();

// Span front ends over the active table. Size mismatches throw dnwr::ShapeMismatch.
void assemble_rhs(std::span<double> out, std::span<const double> current,
                  std::span<const double> delayed, std::span<const double> source, double inv_dt,
                  double delay_coeff);
void blend(std::span<double> out, std::span<const double> fresh, std::span<const double> old,
           double theta);
double max_abs(std::span<const double> values);
double sum_squares(std::span<const double> values);

namespace scalar {
extern const KernelTable kTable;
}
#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
extern const KernelTable kTable;
}
#endif
#if defined(__aarch64__)
namespace neon {
extern const KernelTable kTable;
}
#endif

}  // namespace dnwr::kernels
