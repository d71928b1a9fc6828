#include "dnwr/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dnwr/errors.hpp"

namespace dnwr {

namespace {

// Relative slack allowed when a real ratio must be an integer.
constexpr double kRatioTolerance = 1e-12;

int integral_ratio(double numerator, double denominator, const char* what) {
  const double ratio = numerator / denominator;
  const double rounded = std::round(ratio);
  if (!(rounded >= 1.0) || std::abs(ratio - rounded) > kRatioTolerance * rounded) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " = " << ratio << " is not a positive integer";
    throw NonCommensurate(msg.str());
  }
  return static_cast<int>(rounded);
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::Error ? "error" : "full"; }

std::string to_string(StopReason reason) {
  return reason == StopReason::ToleranceMet ? "tolerance" : "max_iterations";
}

ProblemSpec::ProblemSpec(Coefficients coeffs, SpaceTimeFunction source, SpaceTimeFunction history,
                         TimeFunction left_bc, TimeFunction right_bc)
    : coeffs_(coeffs),
      source_(std::move(source)),
      history_(std::move(history)),
      left_bc_(std::move(left_bc)),
      right_bc_(std::move(right_bc)) {
  if (!(coeffs_.diffusivity > 0.0)) throw InvalidArgument("diffusivity must be positive");
  if (!(coeffs_.delay > 0.0)) throw InvalidArgument("delay must be positive");
  if (!(coeffs_.horizon > 0.0)) throw InvalidArgument("horizon must be positive");
  if (!(coeffs_.x_left < coeffs_.x_right)) throw InvalidArgument("empty spatial domain");
  if (!std::isfinite(coeffs_.reaction) || !std::isfinite(coeffs_.delay_coeff)) {
    throw InvalidArgument("reaction coefficients must be finite");
  }
  if (!source_ || !history_ || !left_bc_ || !right_bc_) {
    throw InvalidArgument("problem data functions must be callable");
  }
}

ProblemSpec ProblemSpec::error_equation(Coefficients coeffs) {
  auto zero_xt = [](double, double) { return 0.0; };
  auto zero_t = [](double) { return 0.0; };
  ProblemSpec spec(coeffs, zero_xt, zero_xt, zero_t, zero_t);
  spec.homogeneous_ = true;
  return spec;
}

SpaceTimeGrid::SpaceTimeGrid(double x_left, double dx, int num_nodes, double dt, int num_steps,
                             int delay_steps)
    : x_left_(x_left),
      dx_(dx),
      num_nodes_(num_nodes),
      dt_(dt),
      num_steps_(num_steps),
      delay_steps_(delay_steps) {
  if (!(dx > 0.0) || !(dt > 0.0)) throw InvalidArgument("dx and dt must be positive");
  if (num_nodes < 2 || num_steps < 1 || delay_steps < 1) {
    throw InvalidArgument("grid needs >= 2 nodes, >= 1 step and delay_steps >= 1");
  }
}

SpaceTimeGrid build_grid(const ProblemSpec& spec, double dx, double dt) {
  if (!(dx > 0.0) || !(dt > 0.0)) throw InvalidArgument("dx and dt must be positive");
  const int cells = integral_ratio(spec.x_right() - spec.x_left(), dx, "domain/dx");
  const int steps = integral_ratio(spec.horizon(), dt, "T/dt");
  const int delay_steps = integral_ratio(spec.delay(), dt, "tau/dt");
  return SpaceTimeGrid(spec.x_left(), dx, cells + 1, dt, steps, delay_steps);
}

Decomposition::Decomposition(const SpaceTimeGrid& grid, std::vector<int> nodes)
    : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw InvalidArgument("decomposition needs at least one subdomain");
  if (nodes_.front() != 0 || nodes_.back() != grid.num_nodes() - 1) {
    throw InvalidArgument("decomposition must span the whole grid");
  }
  for (std::size_t j = 0; j + 1 < nodes_.size(); ++j) {
    if (nodes_[j + 1] - nodes_[j] < 2) {
      throw TooThinSubdomain("subdomain " + std::to_string(j) + " has " +
                             std::to_string(nodes_[j + 1] - nodes_[j]) +
                             " cells; at least 2 are required");
    }
  }
  breakpoints_.reserve(nodes_.size());
  for (int node : nodes_) breakpoints_.push_back(grid.x(node));
}

Decomposition partition(const SpaceTimeGrid& grid, std::span<const double> sizes) {
  if (sizes.empty()) throw InvalidArgument("partition needs at least one size");
  const double length = grid.x_right() - grid.x_left();
  double total = 0.0;
  for (double s : sizes) {
    if (!(s > 0.0)) throw InvalidArgument("subdomain sizes must be positive");
    total += s;
  }
  if (std::abs(total - length) > 1e-9 * length) {
    throw InvalidArgument("subdomain sizes sum to " + std::to_string(total) +
                          " but the domain length is " + std::to_string(length));
  }

  std::vector<int> nodes{0};
  double position = 0.0;
  for (std::size_t j = 0; j + 1 < sizes.size(); ++j) {
    position += sizes[j];
    const double cells = position / grid.dx();
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) * grid.dx() > 1e-12 * std::max(1.0, length)) {
      throw MisalignedBreakpoint("breakpoint x = " + std::to_string(grid.x_left() + position) +
                                 " does not coincide with a grid node");
    }
    nodes.push_back(static_cast<int>(rounded));
  }
  nodes.push_back(grid.num_nodes() - 1);
  return Decomposition(grid, std::move(nodes));
}

Decomposition equal_partition(const SpaceTimeGrid& grid, int subdomains) {
  if (subdomains < 1) throw InvalidArgument("subdomain count must be positive");
  const double width = (grid.x_right() - grid.x_left()) / subdomains;
  std::vector<double> sizes(static_cast<std::size_t>(subdomains), width);
  return partition(grid, sizes);
}

std::vector<InterfaceTrace> initialize_interfaces(const SpaceTimeGrid& grid,
                                                  const Decomposition& decomp,
                                                  std::span<const TimeFunction> initializers) {
  const int count = decomp.interface_count();
  if (initializers.size() != 1 && initializers.size() != static_cast<std::size_t>(count)) {
    throw ArityMismatch(std::to_string(initializers.size()) + " initializers for " +
                        std::to_string(count) + " interfaces");
  }
  std::vector<InterfaceTrace> traces;
  traces.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const auto& init = initializers.size() == 1 ? initializers[0] : initializers[i];
    InterfaceTrace trace{i, std::vector<double>(static_cast<std::size_t>(grid.num_levels()))};
    for (int m = 0; m < grid.num_levels(); ++m) trace.values[m] = init(grid.t(m));
    traces.push_back(std::move(trace));
  }
  return traces;
}

namespace {

InterfaceTrace sample_boundary(const SpaceTimeGrid& grid, int index, Mode mode,
                               const std::function<double(double)>& data) {
  InterfaceTrace trace{index, std::vector<double>(static_cast<std::size_t>(grid.num_levels()))};
  if (mode == Mode::Full) {
    for (int m = 0; m < grid.num_levels(); ++m) trace.values[m] = data(grid.t(m));
  }
  return trace;
}

}  // namespace

InterfaceTrace sample_left_boundary(const ProblemSpec& spec, const SpaceTimeGrid& grid, Mode mode) {
  return sample_boundary(grid, -1, mode, [&](double t) { return spec.left_bc(t); });
}

InterfaceTrace sample_right_boundary(const ProblemSpec& spec, const SpaceTimeGrid& grid,
                                     const Decomposition& decomp, Mode mode) {
  return sample_boundary(grid, decomp.subdomain_count() - 1, mode,
                         [&](double t) { return spec.right_bc(t); });
}

SubdomainField::SubdomainField(int subdomain_index, int first_node, int local_nodes,
                               int num_levels, int delay_steps)
    : subdomain_index_(subdomain_index),
      first_node_(first_node),
      local_nodes_(local_nodes),
      num_levels_(num_levels),
      delay_steps_(delay_steps),
      values_(static_cast<std::size_t>(local_nodes) * static_cast<std::size_t>(num_levels)),
      history_(static_cast<std::size_t>(local_nodes) * static_cast<std::size_t>(delay_steps + 1)),
      left_balance_(static_cast<std::size_t>(num_levels)),
      right_balance_(static_cast<std::size_t>(num_levels)) {}

std::span<double> SubdomainField::level(int m) {
  return {values_.data() + static_cast<std::size_t>(m) * local_nodes_,
          static_cast<std::size_t>(local_nodes_)};
}

std::span<const double> SubdomainField::level(int m) const {
  return {values_.data() + static_cast<std::size_t>(m) * local_nodes_,
          static_cast<std::size_t>(local_nodes_)};
}

std::span<double> SubdomainField::history_level(int m) {
  return {history_.data() + static_cast<std::size_t>(m + delay_steps_) * local_nodes_,
          static_cast<std::size_t>(local_nodes_)};
}

std::span<const double> SubdomainField::history_level(int m) const {
  return {history_.data() + static_cast<std::size_t>(m + delay_steps_) * local_nodes_,
          static_cast<std::size_t>(local_nodes_)};
}

std::span<const double> SubdomainField::lookup(int m) const {
  return m >= 0 ? level(m) : history_level(m);
}

void ConvergenceRecord::append(std::vector<double> interface_norms) {
  Entry entry;
  entry.aggregate = 0.0;
  for (double n : interface_norms) entry.aggregate = std::max(entry.aggregate, n);
  entry.interface_norms = std::move(interface_norms);
  iterations.push_back(std::move(entry));
}

}  // namespace dnwr
