#pragma once

// Problem description, space-time grid, strip decomposition and the trace/field
// containers exchanged between subdomain solves.
//
// Indexing: subdomains are 0-based, j = 0..S-1. Interface i (0-based, i = 0..S-2)
// separates subdomain i from subdomain i+1. Time levels run m = 0..M with t_m = m*dt.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dnwr {

using SpaceTimeFunction = std::function<double(double x, double t)>;
using TimeFunction = std::function<double(double t)>;

/// Error mode solves the homogeneous error equations (zero source, history and outer data);
/// full mode solves the problem as posed.
enum class Mode { Error, Full };

std::string to_string(Mode mode);

struct Coefficients {
  double diffusivity = 1.0;  // nu; the operator is -nu^2 u_xx
  double reaction = 0.0;     // a1
  double delay_coeff = 0.0;  // a2
  double delay = 1.0;        // tau
  double horizon = 1.0;      // T
  double x_left = 0.0;
  double x_right = 1.0;
};

/// Continuous problem
///   u_t - nu^2 u_xx + a1 u(x,t) + a2 u(x,t-tau) = f(x,t)   on (x_L,x_R) x (0,T)
///   u = w0 on [x_L,x_R] x [-tau,0],   u(x_L,t) = g_L(t), u(x_R,t) = g_R(t).
/// a2 = 0 is accepted (no-delay degenerate case).
class ProblemSpec {
 public:
  ProblemSpec(Coefficients coeffs, SpaceTimeFunction source, SpaceTimeFunction history,
              TimeFunction left_bc, TimeFunction right_bc);

  /// Homogeneous error equations: f = 0, w0 = 0, zero outer data.
  static ProblemSpec error_equation(Coefficients coeffs);

  const Coefficients& coefficients() const noexcept { return coeffs_; }
  double diffusivity() const noexcept { return coeffs_.diffusivity; }
  double reaction() const noexcept { return coeffs_.reaction; }
  double delay_coeff() const noexcept { return coeffs_.delay_coeff; }
  double delay() const noexcept { return coeffs_.delay; }
  double horizon() const noexcept { return coeffs_.horizon; }
  double x_left() const noexcept { return coeffs_.x_left; }
  double x_right() const noexcept { return coeffs_.x_right; }
  bool is_error_equation() const noexcept { return homogeneous_; }

  double source(double x, double t) const { return source_(x, t); }
  double history(double x, double t) const { return history_(x, t); }
  double left_bc(double t) const { return left_bc_(t); }
  double right_bc(double t) const { return right_bc_(t); }

 private:
  Coefficients coeffs_;
  SpaceTimeFunction source_;
  SpaceTimeFunction history_;
  TimeFunction left_bc_;
  TimeFunction right_bc_;
  bool homogeneous_ = false;
};

/// Uniform mesh x_l = x_L + l*dx, l = 0..num_nodes-1, and levels t_m = m*dt, m = 0..num_steps.
class SpaceTimeGrid {
 public:
  SpaceTimeGrid(double x_left, double dx, int num_nodes, double dt, int num_steps, int delay_steps);

  double dx() const noexcept { return dx_; }
  double dt() const noexcept { return dt_; }
  int num_nodes() const noexcept { return num_nodes_; }
  int num_steps() const noexcept { return num_steps_; }
  int num_levels() const noexcept { return num_steps_ + 1; }
  int delay_steps() const noexcept { return delay_steps_; }
  double x(int node) const noexcept { return x_left_ + node * dx_; }
  double t(int level) const noexcept { return level * dt_; }
  double x_left() const noexcept { return x_left_; }
  double x_right() const noexcept { return x(num_nodes_ - 1); }
  double horizon() const noexcept { return t(num_steps_); }

 private:
  double x_left_;
  double dx_;
  int num_nodes_;
  double dt_;
  int num_steps_;
  int delay_steps_;
};

/// Throws NonCommensurate when (x_R-x_L)/dx, T/dt or tau/dt is not an integer.
SpaceTimeGrid build_grid(const ProblemSpec& spec, double dx, double dt);

/// Strip decomposition whose breakpoints sit on grid nodes.
class Decomposition {
 public:
  /// `nodes` holds the global node index of every breakpoint, first = 0, last = num_nodes-1.
  Decomposition(const SpaceTimeGrid& grid, std::vector<int> nodes);

  int subdomain_count() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
  int interface_count() const noexcept { return subdomain_count() - 1; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<int>& breakpoint_nodes() const noexcept { return nodes_; }

  int first_node(int subdomain) const { return nodes_.at(subdomain); }
  int last_node(int subdomain) const { return nodes_.at(subdomain + 1); }
  int local_nodes(int subdomain) const { return last_node(subdomain) - first_node(subdomain) + 1; }
  /// Global node of interface i (between subdomain i and i+1).
  int interface_node(int interface) const { return nodes_.at(interface + 1); }

 private:
  std::vector<int> nodes_;
  std::vector<double> breakpoints_;
};

/// Partition into strips of the given widths. Throws MisalignedBreakpoint or TooThinSubdomain.
Decomposition partition(const SpaceTimeGrid& grid, std::span<const double> sizes);
Decomposition equal_partition(const SpaceTimeGrid& grid, int subdomains);

/// Dirichlet waveform at one interface: values[m] = h(t_m), m = 0..M.
struct InterfaceTrace {
  int interface_index = 0;
  std::vector<double> values;
};

/// +x derivative waveform at one interface node.
struct FluxTrace {
  int interface_index = 0;
  std::vector<double> values;
};

/// Sample one initializer per interface; a single initializer is broadcast to all.
std::vector<InterfaceTrace> initialize_interfaces(const SpaceTimeGrid& grid,
                                                  const Decomposition& decomp,
                                                  std::span<const TimeFunction> initializers);

/// Outer boundary data sampled on the grid as traces (index -1 on the left, S-1 on the right).
InterfaceTrace sample_left_boundary(const ProblemSpec& spec, const SpaceTimeGrid& grid, Mode mode);
InterfaceTrace sample_right_boundary(const ProblemSpec& spec, const SpaceTimeGrid& grid,
                                     const Decomposition& decomp, Mode mode);

/// Discrete solution on one subdomain, all levels 0..M, plus the history levels -k..0.
class SubdomainField {
 public:
  SubdomainField() = default;
  SubdomainField(int subdomain_index, int first_node, int local_nodes, int num_levels,
                 int delay_steps);

  int subdomain_index() const noexcept { return subdomain_index_; }
  int first_node() const noexcept { return first_node_; }
  int local_nodes() const noexcept { return local_nodes_; }
  int num_levels() const noexcept { return num_levels_; }
  int delay_steps() const noexcept { return delay_steps_; }

  std::span<double> level(int m);
  std::span<const double> level(int m) const;
  /// History level for m in [-k, 0]. solve_subdomain copies history_level(0) into level(0).
  std::span<double> history_level(int m);
  std::span<const double> history_level(int m) const;
  /// Level m if m >= 0, otherwise the history level.
  std::span<const double> lookup(int m) const;

  double at(int m, int node) const { return level(m)[static_cast<std::size_t>(node)]; }

  /// A*u - rhs at the two end nodes for levels 1..M (entry 0 unused), with A = 1/dt + a1.
  /// Together with the end values it gives the flux consistent with the discrete equations.
  std::vector<double>& end_balance(bool right) { return right ? right_balance_ : left_balance_; }
  const std::vector<double>& end_balance(bool right) const {
    return right ? right_balance_ : left_balance_;
  }

  const std::vector<double>& values() const noexcept { return values_; }

 private:
  int subdomain_index_ = 0;
  int first_node_ = 0;
  int local_nodes_ = 0;
  int num_levels_ = 0;
  int delay_steps_ = 0;
  std::vector<double> values_;
  std::vector<double> history_;
  std::vector<double> left_balance_;
  std::vector<double> right_balance_;
};

enum class StopReason { ToleranceMet, MaxIterations };

std::string to_string(StopReason reason);

/// Per-iteration interface norms. Entry 0 describes the initial traces.
struct ConvergenceRecord {
  struct Entry {
    std::vector<double> interface_norms;
    double aggregate = 0.0;
  };

  std::vector<Entry> iterations;
  StopReason stop_reason = StopReason::MaxIterations;

  /// Number of outer iterations performed (entries beyond the initial one).
  int iteration_count() const noexcept { return static_cast<int>(iterations.size()) - 1; }
  void append(std::vector<double> interface_norms);
};

}  // namespace dnwr
