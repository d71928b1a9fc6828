#pragma once

// Verification backbone: the undecomposed reference solve, a manufactured
// solution, gluing of strip solutions and the norms used for convergence curves.

#include <optional>
#include <span>
#include <vector>

#include "dnwr/model.hpp"
#include "dnwr/stepper.hpp"

namespace dnwr {

/// Solution on the whole grid, [level][global node].
class GlobalField {
 public:
  GlobalField(int num_levels, int num_nodes);

  int num_levels() const noexcept { return num_levels_; }
  int num_nodes() const noexcept { return num_nodes_; }
  std::span<double> level(int m);
  std::span<const double> level(int m) const;
  double at(int m, int node) const { return level(m)[static_cast<std::size_t>(node)]; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  int num_levels_;
  int num_nodes_;
  std::vector<double> values_;
};

/// Backward Euler on the full domain with the outer Dirichlet data: the same code
/// path as a single strip with physical ends.
GlobalField monodomain_solve(const ProblemSpec& spec, const SpaceTimeGrid& grid,
                             Mode mode = Mode::Full);

/// Exact solution w(x,t) = sin(pi (x - x_L) / L) (1 + t), valid for t >= -tau.
struct ManufacturedSolution {
  double x_left = 0.0;
  double length = 1.0;

  double operator()(double x, double t) const;
};

/// Problem whose exact solution is ManufacturedSolution: history from the same
/// formula, zero outer data, and the source
///   f = sin(.) * [1 + nu^2 (pi/L)^2 (1+t) + a1 (1+t) + a2 (1+t-tau)].
ProblemSpec manufactured_problem(const Coefficients& coeffs);

/// Concatenate strip solutions. The shared node of interface i takes the value of
/// the strip on `dirichlet_side[i]` (default: the left strip). Throws
/// InterfaceMismatch when neighbours differ there by more than `tolerance`.
GlobalField glue(const Decomposition& decomp, std::span<const SubdomainField> fields,
                 double tolerance, std::span<const Side> dirichlet_side = {});

/// Restriction of a global field to the strips (history levels left at zero).
std::vector<SubdomainField> restrict_to_subdomains(const GlobalField& field,
                                                   const Decomposition& decomp, int delay_steps);

/// Interface waveform of the global field at interface i.
InterfaceTrace interface_values(const GlobalField& field, const Decomposition& decomp,
                                int interface);

/// sqrt(sum_{m=1..M} dt * (max_x |u(x, t_m)|)^2).
double norm_l2t_linfx(const GlobalField& field, const SpaceTimeGrid& grid);
double norm_l2t_linfx(const SubdomainField& field, const SpaceTimeGrid& grid);

/// sqrt(sum_{m=1..M} dt * h(t_m)^2).
double interface_norm(const InterfaceTrace& trace, const SpaceTimeGrid& grid);

/// max over all levels and nodes of |a - b|. Throws ShapeMismatch.
double max_abs_difference(const GlobalField& a, const GlobalField& b);

}  // namespace dnwr
