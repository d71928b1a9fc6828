#include "dnwr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dnwr/errors.hpp"
#include "dnwr/kernels.hpp"

namespace dnwr {

GlobalField::GlobalField(int num_levels, int num_nodes)
    : num_levels_(num_levels),
      num_nodes_(num_nodes),
      values_(static_cast<std::size_t>(num_levels) * static_cast<std::size_t>(num_nodes)) {}

std::span<double> GlobalField::level(int m) {
  return {values_.data() + static_cast<std::size_t>(m) * num_nodes_,
          static_cast<std::size_t>(num_nodes_)};
}

std::span<const double> GlobalField::level(int m) const {
  return {values_.data() + static_cast<std::size_t>(m) * num_nodes_,
          static_cast<std::size_t>(num_nodes_)};
}

GlobalField monodomain_solve(const ProblemSpec& spec, const SpaceTimeGrid& grid, Mode mode) {
  const Decomposition whole(grid, {0, grid.num_nodes() - 1});
  const SubdomainField field =
      solve_subdomain(spec, grid, whole, 0, sample_left_boundary(spec, grid, mode),
                      sample_right_boundary(spec, grid, whole, mode), mode);
  GlobalField out(grid.num_levels(), grid.num_nodes());
  for (int m = 0; m < grid.num_levels(); ++m) {
    const auto src = field.level(m);
    std::copy(src.begin(), src.end(), out.level(m).begin());
  }
  return out;
}

double ManufacturedSolution::operator()(double x, double t) const {
  return std::sin(std::numbers::pi * (x - x_left) / length) * (1.0 + t);
}

ProblemSpec manufactured_problem(const Coefficients& coeffs) {
  const ManufacturedSolution exact{coeffs.x_left, coeffs.x_right - coeffs.x_left};
  const double wave = std::numbers::pi / exact.length;
  const double nu2 = coeffs.diffusivity * coeffs.diffusivity;
  const double a1 = coeffs.reaction;
  const double a2 = coeffs.delay_coeff;
  const double tau = coeffs.delay;
  auto source = [exact, wave, nu2, a1, a2, tau](double x, double t) {
    const double s = std::sin(wave * (x - exact.x_left));
    return s * (1.0 + nu2 * wave * wave * (1.0 + t) + a1 * (1.0 + t) + a2 * (1.0 + t - tau));
  };
  auto zero = [](double) { return 0.0; };
  return ProblemSpec(coeffs, source, exact, zero, zero);
}

GlobalField glue(const Decomposition& decomp, std::span<const SubdomainField> fields,
                 double tolerance, std::span<const Side> dirichlet_side) {
  const int strips = decomp.subdomain_count();
  if (fields.size() != static_cast<std::size_t>(strips)) {
    throw ShapeMismatch("glue: expected " + std::to_string(strips) + " fields, got " +
                        std::to_string(fields.size()));
  }
  if (!dirichlet_side.empty() && dirichlet_side.size() != static_cast<std::size_t>(strips - 1)) {
    throw ShapeMismatch("glue: one side per interface required");
  }
  const int levels = fields.front().num_levels();
  for (int j = 0; j < strips; ++j) {
    if (fields[j].num_levels() != levels || fields[j].local_nodes() != decomp.local_nodes(j) ||
        fields[j].first_node() != decomp.first_node(j)) {
      throw ShapeMismatch("glue: field " + std::to_string(j) + " does not match the decomposition");
    }
  }

  for (int i = 0; i + 1 < strips; ++i) {
    const auto& left = fields[i];
    const auto& right = fields[i + 1];
    double gap = 0.0;
    for (int m = 0; m < levels; ++m) {
      gap = std::max(gap, std::abs(left.at(m, left.local_nodes() - 1) - right.at(m, 0)));
    }
    if (!(gap <= tolerance)) throw InterfaceMismatch(i, gap);
  }

  const int total_nodes = decomp.breakpoint_nodes().back() + 1;
  GlobalField out(levels, total_nodes);
  for (int m = 0; m < levels; ++m) {
    auto row = out.level(m);
    for (int j = 0; j < strips; ++j) {
      const auto src = fields[j].level(m);
      std::copy(src.begin(), src.end(), row.begin() + fields[j].first_node());
    }
    // Later strips overwrote each shared node with their left end; restore where the
    // left strip holds the Dirichlet value.
    for (int i = 0; i + 1 < strips; ++i) {
      const Side owner = dirichlet_side.empty() ? Side::Left : dirichlet_side[i];
      if (owner == Side::Left) {
        row[decomp.interface_node(i)] = fields[i].at(m, fields[i].local_nodes() - 1);
      }
    }
  }
  return out;
}

std::vector<SubdomainField> restrict_to_subdomains(const GlobalField& field,
                                                   const Decomposition& decomp, int delay_steps) {
  std::vector<SubdomainField> out;
  out.reserve(static_cast<std::size_t>(decomp.subdomain_count()));
  for (int j = 0; j < decomp.subdomain_count(); ++j) {
    SubdomainField sub(j, decomp.first_node(j), decomp.local_nodes(j), field.num_levels(),
                       delay_steps);
    for (int m = 0; m < field.num_levels(); ++m) {
      const auto src = field.level(m).subspan(static_cast<std::size_t>(decomp.first_node(j)),
                                              static_cast<std::size_t>(decomp.local_nodes(j)));
      std::copy(src.begin(), src.end(), sub.level(m).begin());
    }
    out.push_back(std::move(sub));
  }
  return out;
}

InterfaceTrace interface_values(const GlobalField& field, const Decomposition& decomp,
                                int interface) {
  const int node = decomp.interface_node(interface);
  InterfaceTrace trace{interface, std::vector<double>(static_cast<std::size_t>(field.num_levels()))};
  for (int m = 0; m < field.num_levels(); ++m) trace.values[m] = field.at(m, node);
  return trace;
}

namespace {

template <typename Field>
double l2t_linfx(const Field& field, const SpaceTimeGrid& grid) {
  double sum = 0.0;
  for (int m = 1; m < field.num_levels(); ++m) {
    const double peak = kernels::max_abs(field.level(m));
    sum += grid.dt() * peak * peak;
  }
  return std::sqrt(sum);
}

}  // namespace

double norm_l2t_linfx(const GlobalField& field, const SpaceTimeGrid& grid) {
  return l2t_linfx(field, grid);
}

double norm_l2t_linfx(const SubdomainField& field, const SpaceTimeGrid& grid) {
  return l2t_linfx(field, grid);
}

double interface_norm(const InterfaceTrace& trace, const SpaceTimeGrid& grid) {
  if (trace.values.size() < 2) return 0.0;
  const std::span<const double> tail(trace.values.data() + 1, trace.values.size() - 1);
  return std::sqrt(grid.dt() * kernels::sum_squares(tail));
}

double max_abs_difference(const GlobalField& a, const GlobalField& b) {
  if (a.num_levels() != b.num_levels() || a.num_nodes() != b.num_nodes()) {
    throw ShapeMismatch("max_abs_difference: fields differ in shape");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  }
  return worst;
}

}  // namespace dnwr
