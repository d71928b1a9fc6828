#include <filesystem>

#include "dnwr/errors.hpp"
#include "dnwr/experiment.hpp"
#include "dnwr/initializers.hpp"
#include "dnwr/oracle.hpp"

namespace dnwr {

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const Coefficients coeffs = config.coefficients();
  // Full mode needs concrete data; the manufactured problem supplies it.
  const ProblemSpec spec = config.mode == Mode::Error ? ProblemSpec::error_equation(coeffs)
                                                      : manufactured_problem(coeffs);
  const SpaceTimeGrid grid = build_grid(spec, config.dx, config.dt);
  const Decomposition decomp = partition(grid, config.strip_sizes());

  std::vector<TimeFunction> initializers;
  for (const auto& name : config.initializers) initializers.push_back(named_initializer(name));
  const auto initial = initialize_interfaces(grid, decomp, initializers);

  ExperimentResult result{config.label, {}};
  for (double theta : config.thetas) {
    RunParams params;
    params.theta = theta;
    params.tolerance = config.tolerance;
    params.max_iterations = config.max_iterations;
    params.mode = config.mode;
    params.flux = config.flux;
    params.concurrent = config.concurrent;
    DnwrResult run = run_dnwr(spec, grid, decomp, config.arrangement, params, initial);
    result.runs.push_back(ThetaRun{theta, std::move(run.record)});
  }
  return result;
}

std::vector<ExperimentConfig> resolve_target(const std::string& target) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(target, ec)) return {load_config(target)};
  if (const Preset* preset = find_preset(target)) return preset->cases;
  throw ConfigError("target", "'" + target + "' is neither a config file nor a preset name");
}

void apply_overrides(std::vector<ExperimentConfig>& cases, const RunOverrides& overrides) {
  for (auto& c : cases) {
    if (overrides.output) c.output = *overrides.output;
    if (overrides.max_iterations) c.max_iterations = *overrides.max_iterations;
    if (overrides.tolerance) c.tolerance = *overrides.tolerance;
    validate_config(c);
  }
}

}  // namespace dnwr
