#include "dnwr/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dnwr/errors.hpp"
#include "dnwr/kernels.hpp"

namespace dnwr {

StepCoefficients StepCoefficients::from(const ProblemSpec& spec, const SpaceTimeGrid& grid) {
  return {spec.diffusivity(), spec.reaction(), spec.delay_coeff(), grid.dx(), grid.dt()};
}

namespace {

std::size_t trace_length(const EndCondition& end) {
  return std::visit([](const auto& trace) { return trace.values.size(); }, end);
}

double trace_value(const EndCondition& end, int level) {
  return std::visit([level](const auto& trace) { return trace.values.at(level); }, end);
}

// Thomas algorithm on diagonals stored per row. `rhs` is consumed.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper_in, std::span<double> rhs,
                       std::vector<double>& upper, std::span<double> out) {
  // `upper` receives the normalised super-diagonal of the forward sweep.
  const std::size_t n = diag.size();
  upper.resize(n);
  double pivot = diag[0];
  if (std::abs(pivot) < 1e-300) throw SingularSystem("zero pivot in row 0");
  upper[0] = upper_in[0] / pivot;
  rhs[0] /= pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i] * upper[i - 1];
    if (std::abs(pivot) <= 1e-14 * (std::abs(diag[i]) + std::abs(lower[i]))) {
      throw SingularSystem("vanishing pivot in row " + std::to_string(i));
    }
    upper[i] = upper_in[i] / pivot;
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / pivot;
  }
  out[n - 1] = rhs[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) out[i] = rhs[i] - upper[i] * out[i + 1];
}

}  // namespace

void step_subdomain(const StepCoefficients& coeffs, const EndCondition& left,
                    const EndCondition& right, std::span<const double> current,
                    std::span<const double> delayed, std::span<const double> source_next, int m,
                    std::span<double> next, StepWorkspace& workspace) {
  const std::size_t n = current.size();
  if (n < 2) throw TooFewNodes("a strip needs at least 2 nodes");
  if (delayed.size() != n || source_next.size() != n || next.size() != n) {
    throw ShapeMismatch("step_subdomain: level arrays differ in length");
  }
  const auto level = static_cast<std::size_t>(m + 1);
  if (trace_length(left) <= level || trace_length(right) <= level) {
    throw ShapeMismatch("step_subdomain: end condition shorter than level " +
                        std::to_string(m + 1));
  }

  workspace.rhs.resize(n);
  kernels::assemble_rhs(workspace.rhs, current, delayed, source_next, 1.0 / coeffs.dt,
                        coeffs.delay_coeff);

  const double a = coeffs.shift();
  const double c = coeffs.coupling();
  const double ghost = 2.0 * coeffs.diffusivity * coeffs.diffusivity / coeffs.dx;

  // Rows are assembled into three diagonals; the solve works on a copy of rhs so
  // the caller still sees the unmodified right-hand side.
  auto& lower = workspace.lower;
  auto& diag = workspace.diag;
  auto& upper = workspace.upper;
  lower.assign(n, -c);
  diag.assign(n, a + 2.0 * c);
  upper.assign(n, -c);
  auto& d = workspace.modified_rhs;
  d.assign(workspace.rhs.begin(), workspace.rhs.end());

  if (is_dirichlet(left)) {
    diag[0] = 1.0;
    upper[0] = 0.0;
    d[0] = trace_value(left, m + 1);
  } else {
    upper[0] = -2.0 * c;
    d[0] -= ghost * trace_value(left, m + 1);
  }
  lower[0] = 0.0;

  if (is_dirichlet(right)) {
    diag[n - 1] = 1.0;
    lower[n - 1] = 0.0;
    d[n - 1] = trace_value(right, m + 1);
  } else {
    lower[n - 1] = -2.0 * c;
    d[n - 1] += ghost * trace_value(right, m + 1);
  }
  upper[n - 1] = 0.0;

  solve_tridiagonal(lower, diag, upper, d, workspace.sweep, next);
}

std::vector<double> step_subdomain(const StepCoefficients& coeffs, const EndCondition& left,
                                   const EndCondition& right, std::span<const double> current,
                                   std::span<const double> delayed,
                                   std::span<const double> source_next, int m) {
  std::vector<double> next(current.size());
  StepWorkspace workspace;
  step_subdomain(coeffs, left, right, current, delayed, source_next, m, next, workspace);
  return next;
}

DelayBuffer::DelayBuffer(int nodes, int delay_steps, std::vector<double> history)
    : nodes_(nodes),
      delay_steps_(delay_steps),
      history_(std::move(history)),
      ring_(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(delay_steps + 1)) {
  if (history_.size() != static_cast<std::size_t>(nodes) * (delay_steps + 1)) {
    throw ShapeMismatch("history must hold delay_steps + 1 levels");
  }
  // Level 0 is both the last history level and the first solution level.
  std::copy(history_.end() - nodes_, history_.end(), ring_.begin());
}

void DelayBuffer::push(std::span<const double> level) {
  if (level.size() != static_cast<std::size_t>(nodes_)) {
    throw ShapeMismatch("DelayBuffer::push: level width mismatch");
  }
  ++newest_;
  const auto slot = static_cast<std::size_t>(newest_ % (delay_steps_ + 1));
  std::copy(level.begin(), level.end(), ring_.begin() + slot * nodes_);
}

std::span<const double> DelayBuffer::lookup(int j) const {
  if (j > newest_ || j < newest_ - delay_steps_ || j < -delay_steps_) {
    throw InvalidArgument("DelayBuffer::lookup: level " + std::to_string(j) +
                          " is outside the retained window");
  }
  const auto width = static_cast<std::size_t>(nodes_);
  if (j <= 0) return {history_.data() + static_cast<std::size_t>(j + delay_steps_) * width, width};
  const auto slot = static_cast<std::size_t>(j % (delay_steps_ + 1));
  return {ring_.data() + slot * width, width};
}

SubdomainField solve_subdomain(const ProblemSpec& spec, const SpaceTimeGrid& grid,
                               const Decomposition& decomp, int subdomain,
                               const EndCondition& left, const EndCondition& right, Mode mode,
                               const DelayObserver& observer) {
  if (subdomain < 0 || subdomain >= decomp.subdomain_count()) {
    throw InvalidArgument("subdomain index out of range");
  }
  const auto levels = static_cast<std::size_t>(grid.num_levels());
  if (trace_length(left) != levels || trace_length(right) != levels) {
    throw ShapeMismatch("end conditions must cover every time level");
  }

  const int first = decomp.first_node(subdomain);
  const int nodes = decomp.local_nodes(subdomain);
  const int k = grid.delay_steps();
  const bool homogeneous = mode == Mode::Error;

  SubdomainField field(subdomain, first, nodes, grid.num_levels(), k);
  for (int h = -k; h <= 0; ++h) {
    auto row = field.history_level(h);
    for (int l = 0; l < nodes; ++l) {
      row[l] = homogeneous ? 0.0 : spec.history(grid.x(first + l), grid.t(h));
    }
  }
  {
    auto level0 = field.level(0);
    auto hist0 = field.history_level(0);
    std::copy(hist0.begin(), hist0.end(), level0.begin());
  }

  std::vector<double> history_copy(static_cast<std::size_t>(nodes) * (k + 1));
  for (int h = -k; h <= 0; ++h) {
    auto row = field.history_level(h);
    std::copy(row.begin(), row.end(), history_copy.begin() + static_cast<std::size_t>(h + k) * nodes);
  }
  DelayBuffer buffer(nodes, k, std::move(history_copy));

  const StepCoefficients coeffs = StepCoefficients::from(spec, grid);
  const double a = coeffs.shift();
  StepWorkspace workspace;
  std::vector<double> source(static_cast<std::size_t>(nodes), 0.0);
  auto& left_balance = field.end_balance(false);
  auto& right_balance = field.end_balance(true);

  for (int m = 0; m < grid.num_steps(); ++m) {
    if (!homogeneous) {
      const double t_next = grid.t(m + 1);
      for (int l = 0; l < nodes; ++l) source[l] = spec.source(grid.x(first + l), t_next);
    }
    const auto delayed = buffer.lookup(m + 1 - k);
    if (observer) observer(m + 1, delayed);
    auto next = field.level(m + 1);
    step_subdomain(coeffs, left, right, field.level(m), delayed, source, m, next, workspace);
    buffer.push(next);
    left_balance[m + 1] = a * next[0] - workspace.rhs[0];
    right_balance[m + 1] = a * next[nodes - 1] - workspace.rhs[nodes - 1];
  }
  return field;
}

InterfaceTrace extract_dirichlet_trace(const SubdomainField& field, Side side) {
  const int node = side == Side::Left ? 0 : field.local_nodes() - 1;
  const int index = side == Side::Left ? field.subdomain_index() - 1 : field.subdomain_index();
  InterfaceTrace trace{index, std::vector<double>(static_cast<std::size_t>(field.num_levels()))};
  for (int m = 0; m < field.num_levels(); ++m) trace.values[m] = field.at(m, node);
  return trace;
}

namespace {

double one_sided_derivative(std::span<const double> u, double dx, Side side) {
  const std::size_t n = u.size();
  if (side == Side::Left) return (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
  return (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * dx);
}

FluxTrace empty_flux(const SubdomainField& field, Side side) {
  if (field.local_nodes() < 3) throw TooFewNodes("flux extraction needs at least 3 nodes");
  const int index = side == Side::Left ? field.subdomain_index() - 1 : field.subdomain_index();
  return FluxTrace{index, std::vector<double>(static_cast<std::size_t>(field.num_levels()))};
}

}  // namespace

FluxTrace extract_flux(const SubdomainField& field, const SpaceTimeGrid& grid, Side side) {
  FluxTrace flux = empty_flux(field, side);
  for (int m = 0; m < field.num_levels(); ++m) {
    flux.values[m] = one_sided_derivative(field.level(m), grid.dx(), side);
  }
  return flux;
}

FluxTrace extract_transmission_flux(const SubdomainField& field, const StepCoefficients& coeffs,
                                    const SpaceTimeGrid& grid, Side side) {
  FluxTrace flux = empty_flux(field, side);
  flux.values[0] = one_sided_derivative(field.level(0), grid.dx(), side);
  const double dx = coeffs.dx;
  const double half_cell = dx / (2.0 * coeffs.diffusivity * coeffs.diffusivity);
  const bool right = side == Side::Right;
  const auto& balance = field.end_balance(right);
  const int n = field.local_nodes();
  for (int m = 1; m < field.num_levels(); ++m) {
    const auto u = field.level(m);
    if (right) {
      flux.values[m] = (u[n - 1] - u[n - 2]) / dx + half_cell * balance[m];
    } else {
      flux.values[m] = (u[1] - u[0]) / dx - half_cell * balance[m];
    }
  }
  return flux;
}

}  // namespace dnwr
