#include <cstdlib>
#include <string>

#include "dnwr/errors.hpp"
#include "dnwr/kernels.hpp"

namespace dnwr::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!isa_available(isa)) {
    throw InvalidArgument("SIMD variant '" + std::string(to_string(isa)) + "' is unavailable");
  }
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2:
      return avx2::kTable;
#endif
#if defined(__aarch64__)
    case Isa::Neon:
      return neon::kTable;
#endif
    default:
      return scalar::kTable;
  }
}

namespace {

Isa select_isa() {
  if (const char* forced = std::getenv("DNWR_SIMD")) {
    const std::string name(forced);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (name == to_string(isa) && isa_available(isa)) return isa;
    }
  }
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ShapeMismatch(std::string(what) + ": lengths " + std::to_string(a) + " and " +
                        std::to_string(b));
  }
}

}  // namespace

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

const KernelTable& active() {
  static const KernelTable& t = table(active_isa());
  return t;
}

void assemble_rhs(std::span<double> out, std::span<const double> current,
                  std::span<const double> delayed, std::span<const double> source, double inv_dt,
                  double delay_coeff) {
  require_same(out.size(), current.size(), "assemble_rhs");
  require_same(out.size(), delayed.size(), "assemble_rhs");
  require_same(out.size(), source.size(), "assemble_rhs");
  active().assemble_rhs(out.data(), current.data(), delayed.data(), source.data(), inv_dt,
                        delay_coeff, out.size());
}

void blend(std::span<double> out, std::span<const double> fresh, std::span<const double> old,
           double theta) {
  require_same(out.size(), fresh.size(), "blend");
  require_same(out.size(), old.size(), "blend");
  active().blend(out.data(), fresh.data(), old.data(), theta, out.size());
}

double max_abs(std::span<const double> values) {
  return active().max_abs(values.data(), values.size());
}

double sum_squares(std::span<const double> values) {
  return active().sum_squares(values.data(), values.size());
}

}  // namespace dnwr::kernels
