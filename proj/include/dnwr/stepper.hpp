#pragma once

// Backward Euler marching of the delayed reaction-diffusion operator on one strip:
//
//   (1/dt + a1) u^{m+1} - nu^2 D_xx u^{m+1} = u^m/dt - a2 u^{m+1-k} + f(., t_{m+1})
//
// with D_xx the 3-point second difference. Dirichlet ends pin the nodal value;
// Neumann ends impose the +x derivative through a ghost node eliminated with the
// centred difference, which keeps the system tridiagonal.

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "dnwr/model.hpp"

namespace dnwr {

enum class Side { Left, Right };

/// Constants of one implicit step.
struct StepCoefficients {
  double diffusivity = 1.0;
  double reaction = 0.0;
  double delay_coeff = 0.0;
  double dx = 1.0;
  double dt = 1.0;

  static StepCoefficients from(const ProblemSpec& spec, const SpaceTimeGrid& grid);
  /// Coefficient A = 1/dt + a1 of u^{m+1} in the reaction part.
  double shift() const noexcept { return 1.0 / dt + reaction; }
  /// nu^2 / dx^2.
  double coupling() const noexcept { return diffusivity * diffusivity / (dx * dx); }
};

/// Transmission condition at one end of a strip. Each trace covers levels 0..M.
using EndCondition = std::variant<InterfaceTrace, FluxTrace>;

inline bool is_dirichlet(const EndCondition& end) {
  return std::holds_alternative<InterfaceTrace>(end);
}

/// Scratch space for the tridiagonal solve; reuse across steps to avoid allocation.
struct StepWorkspace {
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;
  std::vector<double> sweep;
  std::vector<double> modified_rhs;
};

/// Advance from level m to m+1. `delayed` is the solution at t_{m+1} - tau. On return
/// `workspace.rhs` holds the assembled right-hand side before boundary modification.
void step_subdomain(const StepCoefficients& coeffs, const EndCondition& left,
                    const EndCondition& right, std::span<const double> current,
                    std::span<const double> delayed, std::span<const double> source_next, int m,
                    std::span<double> next, StepWorkspace& workspace);

std::vector<double> step_subdomain(const StepCoefficients& coeffs, const EndCondition& left,
                                   const EndCondition& right, std::span<const double> current,
                                   std::span<const double> delayed,
                                   std::span<const double> source_next, int m);

/// History levels t in [-tau, 0] followed by a ring of the most recent solution levels.
class DelayBuffer {
 public:
  /// `history` holds levels -k..0, each `nodes` wide.
  DelayBuffer(int nodes, int delay_steps, std::vector<double> history);

  /// Appends the solution at level `newest_level() + 1`.
  void push(std::span<const double> level);
  int newest_level() const noexcept { return newest_; }

  /// Level j, j >= newest_level() - delay_steps. Negative or zero j reads the history.
  std::span<const double> lookup(int j) const;

 private:
  int nodes_;
  int delay_steps_;
  int newest_ = 0;
  std::vector<double> history_;
  std::vector<double> ring_;
};

/// Called with (m+1, delayed operand) before each step.
using DelayObserver = std::function<void(int next_level, std::span<const double> delayed)>;

/// March the strip over all levels. Error mode uses zero history and source.
SubdomainField solve_subdomain(const ProblemSpec& spec, const SpaceTimeGrid& grid,
                               const Decomposition& decomp, int subdomain,
                               const EndCondition& left, const EndCondition& right, Mode mode,
                               const DelayObserver& observer = {});

InterfaceTrace extract_dirichlet_trace(const SubdomainField& field, Side side);

/// +x derivative at an end node from the one-sided 3-point formula, per level.
/// Throws TooFewNodes for strips with fewer than 3 nodes.
FluxTrace extract_flux(const SubdomainField& field, const SpaceTimeGrid& grid, Side side);

/// +x derivative at an end node recovered from the discrete equation at that node
/// (the centred difference with the ghost value eliminated). Feeding it to a
/// Neumann end reproduces the undecomposed discrete equation at the interface.
/// Level 0 has no step equation and falls back to the one-sided formula.
FluxTrace extract_transmission_flux(const SubdomainField& field, const StepCoefficients& coeffs,
                                    const SpaceTimeGrid& grid, Side side);

}  // namespace dnwr
