#include "dnwr/orchestrator.hpp"

#include <future>
#include <optional>

#include "dnwr/errors.hpp"
#include "dnwr/kernels.hpp"
#include "dnwr/oracle.hpp"

namespace dnwr {

std::string to_string(Arrangement arrangement) {
  switch (arrangement) {
    case Arrangement::Sweep:
      return "sweep";
    case Arrangement::RedBlack:
      return "redblack";
    case Arrangement::CentralOutward:
      return "central";
  }
  return "unknown";
}

Arrangement parse_arrangement(std::string_view name) {
  if (name == "sweep" || name == "arr1") return Arrangement::Sweep;
  if (name == "redblack" || name == "red-black" || name == "arr2") return Arrangement::RedBlack;
  if (name == "central" || name == "central-outward" || name == "arr3") {
    return Arrangement::CentralOutward;
  }
  throw InvalidArgument("unknown arrangement '" + std::string(name) + "'");
}

void RunParams::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("theta must lie in (0, 1]");
  if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (max_iterations < 1) throw InvalidArgument("max_iterations must be at least 1");
}

InterfaceTrace relax_update(double theta, const InterfaceTrace& fresh, const InterfaceTrace& old) {
  if (fresh.interface_index != old.interface_index || fresh.values.size() != old.values.size()) {
    throw ShapeMismatch("relax_update: traces of interfaces " +
                        std::to_string(fresh.interface_index) + " and " +
                        std::to_string(old.interface_index) + " do not match");
  }
  InterfaceTrace out{old.interface_index, std::vector<double>(old.values.size())};
  kernels::blend(out.values, fresh.values, old.values, theta);
  return out;
}

void check_arrangement(Arrangement arrangement, int subdomains) {
  if (subdomains < 2) {
    throw InvalidArgument("DNWR needs at least 2 subdomains, got " + std::to_string(subdomains));
  }
  if (arrangement == Arrangement::CentralOutward && subdomains % 2 == 0) {
    throw EvenSubdomainCount("central-outward arrangement needs an odd subdomain count, got " +
                             std::to_string(subdomains));
  }
}

namespace {

// Everything one outer iteration reads; the previous traces are an immutable snapshot.
class IterationContext {
 public:
  IterationContext(const DnwrState& state, const ProblemSpec& spec, const SpaceTimeGrid& grid,
                   const Decomposition& decomp, const RunParams& params)
      : state_(state),
        spec_(spec),
        grid_(grid),
        decomp_(decomp),
        params_(params),
        coeffs_(StepCoefficients::from(spec, grid)),
        left_boundary_(sample_left_boundary(spec, grid, params.mode)),
        right_boundary_(sample_right_boundary(spec, grid, decomp, params.mode)) {
    if (state.traces.size() != static_cast<std::size_t>(decomp.interface_count())) {
      throw ShapeMismatch("state holds " + std::to_string(state.traces.size()) +
                          " traces for " + std::to_string(decomp.interface_count()) +
                          " interfaces");
    }
    for (const auto& trace : state.traces) {
      if (trace.values.size() != static_cast<std::size_t>(grid.num_levels())) {
        throw ShapeMismatch("interface trace does not cover every time level");
      }
    }
  }

  int subdomains() const { return decomp_.subdomain_count(); }

  /// Dirichlet data at interface i; -1 and S-1 name the physical boundary.
  EndCondition dirichlet(int interface) const {
    if (interface < 0) return left_boundary_;
    if (interface >= decomp_.interface_count()) return right_boundary_;
    return state_.traces[interface];
  }

  EndCondition flux(const SubdomainField& neighbour, Side side) const {
    if (params_.flux == FluxScheme::OneSided) return extract_flux(neighbour, grid_, side);
    return extract_transmission_flux(neighbour, coeffs_, grid_, side);
  }

  SubdomainField solve(int subdomain, const EndCondition& left, const EndCondition& right) const {
    return solve_subdomain(spec_, grid_, decomp_, subdomain, left, right, params_.mode);
  }

  /// Relax every interface against the trace of the strip named by `neumann_side`.
  DnwrState finish(std::vector<SubdomainField> fields,
                   const std::vector<Side>& neumann_side) const {
    DnwrState next;
    next.iteration = state_.iteration + 1;
    next.traces.reserve(state_.traces.size());
    for (int i = 0; i < decomp_.interface_count(); ++i) {
      // Strip i touches interface i with its right end; strip i+1 with its left end.
      const InterfaceTrace fresh = neumann_side[i] == Side::Left
                                       ? extract_dirichlet_trace(fields[i], Side::Right)
                                       : extract_dirichlet_trace(fields[i + 1], Side::Left);
      next.traces.push_back(relax_update(params_.theta, fresh, state_.traces[i]));
    }
    next.fields = std::move(fields);
    return next;
  }

  bool concurrent() const { return params_.concurrent; }

 private:
  const DnwrState& state_;
  const ProblemSpec& spec_;
  const SpaceTimeGrid& grid_;
  const Decomposition& decomp_;
  const RunParams& params_;
  StepCoefficients coeffs_;
  InterfaceTrace left_boundary_;
  InterfaceTrace right_boundary_;
};

std::vector<Side> opposite(const std::vector<Side>& sides) {
  std::vector<Side> out;
  out.reserve(sides.size());
  for (Side s : sides) out.push_back(s == Side::Left ? Side::Right : Side::Left);
  return out;
}

// Runs `task(j)` for each j, concurrently when requested; results land in fields[j].
template <typename Task>
void run_phase(const IterationContext& ctx, const std::vector<int>& strips,
               std::vector<std::optional<SubdomainField>>& fields, Task task) {
  if (!ctx.concurrent() || strips.size() < 2) {
    for (int j : strips) fields[j] = task(j);
    return;
  }
  std::vector<std::future<SubdomainField>> pending;
  pending.reserve(strips.size());
  for (int j : strips) pending.push_back(std::async(std::launch::async, task, j));
  for (std::size_t n = 0; n < strips.size(); ++n) fields[strips[n]] = pending[n].get();
}

std::vector<SubdomainField> unwrap(std::vector<std::optional<SubdomainField>>& fields) {
  std::vector<SubdomainField> out;
  out.reserve(fields.size());
  for (auto& f : fields) out.push_back(std::move(f.value()));
  return out;
}

}  // namespace

std::vector<Side> dirichlet_sides(Arrangement arrangement, int subdomains) {
  check_arrangement(arrangement, subdomains);
  const int interfaces = subdomains - 1;
  std::vector<Side> sides(static_cast<std::size_t>(interfaces), Side::Left);
  switch (arrangement) {
    case Arrangement::Sweep:
      break;
    case Arrangement::RedBlack:
      for (int i = 0; i < interfaces; ++i) sides[i] = i % 2 == 0 ? Side::Left : Side::Right;
      break;
    case Arrangement::CentralOutward: {
      const int centre = subdomains / 2;
      for (int i = 0; i < interfaces; ++i) sides[i] = i < centre ? Side::Right : Side::Left;
      break;
    }
  }
  return sides;
}

DnwrState iterate_sweep(const DnwrState& state, const ProblemSpec& spec, const SpaceTimeGrid& grid,
                        const Decomposition& decomp, const RunParams& params) {
  check_arrangement(Arrangement::Sweep, decomp.subdomain_count());
  const IterationContext ctx(state, spec, grid, decomp, params);
  const int strips = ctx.subdomains();

  std::vector<SubdomainField> fields;
  fields.reserve(static_cast<std::size_t>(strips));
  fields.push_back(ctx.solve(0, ctx.dirichlet(-1), ctx.dirichlet(0)));
  for (int j = 1; j < strips; ++j) {
    fields.push_back(ctx.solve(j, ctx.flux(fields[j - 1], Side::Right), ctx.dirichlet(j)));
  }
  return ctx.finish(std::move(fields), opposite(dirichlet_sides(Arrangement::Sweep, strips)));
}

DnwrState iterate_redblack(const DnwrState& state, const ProblemSpec& spec,
                           const SpaceTimeGrid& grid, const Decomposition& decomp,
                           const RunParams& params) {
  check_arrangement(Arrangement::RedBlack, decomp.subdomain_count());
  const IterationContext ctx(state, spec, grid, decomp, params);
  const int strips = ctx.subdomains();

  std::vector<int> dirichlet_strips, neumann_strips;
  for (int j = 0; j < strips; ++j) (j % 2 == 0 ? dirichlet_strips : neumann_strips).push_back(j);

  std::vector<std::optional<SubdomainField>> fields(static_cast<std::size_t>(strips));
  run_phase(ctx, dirichlet_strips, fields,
            [&](int j) { return ctx.solve(j, ctx.dirichlet(j - 1), ctx.dirichlet(j)); });
  run_phase(ctx, neumann_strips, fields, [&](int j) {
    const EndCondition left = ctx.flux(*fields[j - 1], Side::Right);
    const EndCondition right =
        j == strips - 1 ? ctx.dirichlet(j) : ctx.flux(*fields[j + 1], Side::Left);
    return ctx.solve(j, left, right);
  });
  return ctx.finish(unwrap(fields), opposite(dirichlet_sides(Arrangement::RedBlack, strips)));
}

DnwrState iterate_central(const DnwrState& state, const ProblemSpec& spec,
                          const SpaceTimeGrid& grid, const Decomposition& decomp,
                          const RunParams& params) {
  check_arrangement(Arrangement::CentralOutward, decomp.subdomain_count());
  const IterationContext ctx(state, spec, grid, decomp, params);
  const int strips = ctx.subdomains();
  const int centre = strips / 2;

  std::vector<std::optional<SubdomainField>> fields(static_cast<std::size_t>(strips));
  fields[centre] = ctx.solve(centre, ctx.dirichlet(centre - 1), ctx.dirichlet(centre));

  // The two branches write disjoint slots and only read the centre.
  auto leftward = [&] {
    for (int i = centre - 1; i >= 0; --i) {
      fields[i] = ctx.solve(i, ctx.dirichlet(i - 1), ctx.flux(*fields[i + 1], Side::Left));
    }
  };
  auto rightward = [&] {
    for (int j = centre + 1; j < strips; ++j) {
      fields[j] = ctx.solve(j, ctx.flux(*fields[j - 1], Side::Right), ctx.dirichlet(j));
    }
  };
  if (ctx.concurrent()) {
    auto left_done = std::async(std::launch::async, leftward);
    rightward();
    left_done.get();
  } else {
    leftward();
    rightward();
  }
  return ctx.finish(unwrap(fields),
                    opposite(dirichlet_sides(Arrangement::CentralOutward, strips)));
}

DnwrState iterate(Arrangement arrangement, const DnwrState& state, const ProblemSpec& spec,
                  const SpaceTimeGrid& grid, const Decomposition& decomp, const RunParams& params) {
  switch (arrangement) {
    case Arrangement::Sweep:
      return iterate_sweep(state, spec, grid, decomp, params);
    case Arrangement::RedBlack:
      return iterate_redblack(state, spec, grid, decomp, params);
    case Arrangement::CentralOutward:
      return iterate_central(state, spec, grid, decomp, params);
  }
  throw InvalidArgument("unknown arrangement");
}

namespace {

std::vector<double> trace_norms(const std::vector<InterfaceTrace>& traces,
                                const SpaceTimeGrid& grid) {
  std::vector<double> norms;
  norms.reserve(traces.size());
  for (const auto& t : traces) norms.push_back(interface_norm(t, grid));
  return norms;
}

std::vector<double> increment_norms(const std::vector<InterfaceTrace>& current,
                                    const std::vector<InterfaceTrace>& previous,
                                    const SpaceTimeGrid& grid) {
  std::vector<double> norms;
  norms.reserve(current.size());
  for (std::size_t i = 0; i < current.size(); ++i) {
    InterfaceTrace diff{current[i].interface_index, current[i].values};
    for (std::size_t m = 0; m < diff.values.size(); ++m) diff.values[m] -= previous[i].values[m];
    norms.push_back(interface_norm(diff, grid));
  }
  return norms;
}

}  // namespace

DnwrResult run_dnwr(const ProblemSpec& spec, const SpaceTimeGrid& grid, const Decomposition& decomp,
                    Arrangement arrangement, const RunParams& params,
                    std::vector<InterfaceTrace> initial_traces) {
  params.validate();
  check_arrangement(arrangement, decomp.subdomain_count());

  DnwrResult result;
  DnwrState state;
  state.traces = std::move(initial_traces);
  result.record.append(trace_norms(state.traces, grid));

  for (int k = 1; k <= params.max_iterations; ++k) {
    DnwrState next = iterate(arrangement, state, spec, grid, decomp, params);
    result.record.append(params.mode == Mode::Error ? trace_norms(next.traces, grid)
                                                    : increment_norms(next.traces, state.traces,
                                                                      grid));
    state = std::move(next);
    if (result.record.iterations.back().aggregate <= params.tolerance) {
      result.record.stop_reason = StopReason::ToleranceMet;
      break;
    }
  }
  result.traces = std::move(state.traces);
  result.fields = std::move(state.fields);
  return result;
}

}  // namespace dnwr
