#pragma once

// Configuration-driven experiment runner and its CSV output.
//
// Config files are flat `key = value` text, one entry per line, lists comma
// separated, `#` starts a comment. Keys:
//
//   arrangement     sweep | redblack | central (aliases arr1 | arr2 | arr3)
//   mode            error | full   (full mode solves the manufactured problem)
//   x_left, x_right domain bounds
//   subdomains      strip count for an equal split, or
//   sizes           explicit strip widths
//   nu, a1, a2, tau, T, dx, dt
//   theta           one value or a list (one run per value)
//   init            initializer name, one shared or one per interface
//                   (t2 | t | sin | piecewise | zero)
//   tolerance, max_iterations
//   flux            conservative | one-sided
//   concurrent      true | false
//   output          CSV path

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnwr/model.hpp"
#include "dnwr/orchestrator.hpp"

namespace dnwr {

struct ExperimentConfig {
  std::string label;
  Arrangement arrangement = Arrangement::CentralOutward;
  Mode mode = Mode::Error;
  double x_left = 0.0;
  double x_right = 5.0;
  int subdomains = 5;
  std::vector<double> sizes;  // overrides `subdomains` when non-empty
  double nu = 1.0;
  double a1 = 0.0;
  double a2 = 0.028;
  double tau = 3.0;
  double horizon = 10.0;
  double dx = 0.1;
  double dt = 0.2;
  std::vector<double> thetas{0.5};
  std::vector<std::string> initializers{"t2"};
  double tolerance = 1e-6;
  int max_iterations = 100;
  FluxScheme flux = FluxScheme::Conservative;
  bool concurrent = false;
  std::string output;

  Coefficients coefficients() const;
  /// Strip widths, expanding `subdomains` into an equal split when `sizes` is empty.
  std::vector<double> strip_sizes() const;
};

/// Parse `key = value` text. Throws ConfigError naming the offending key.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig load_config(const std::string& path);
std::string to_config_text(const ExperimentConfig& config);

/// Check every numeric constraint of the model (commensurate grid, aligned
/// breakpoints, arrangement vs strip count, initializer names and arity).
/// Throws ConfigError naming the offending key.
void validate_config(const ExperimentConfig& config);

struct ThetaRun {
  double theta = 0.5;
  ConvergenceRecord record;
};

struct ExperimentResult {
  std::string label;
  std::vector<ThetaRun> runs;
};

/// One run_dnwr per theta. Non-convergence is reported in the record, not thrown.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct Preset {
  std::string name;
  std::string description;
  std::vector<ExperimentConfig> cases;
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

/// One block per result:
///   # case: <label>                     (omitted for an empty label)
///   theta,iteration,interface_index,interface_norm,aggregate_norm
///   ...
///   <blank line>
///   theta,iterations_to_tolerance,stop_reason
///   ...
/// Blocks are separated by a blank line. Reals use 17 significant digits;
/// interface_index counts interfaces from 1, left to right.
void write_csv(std::ostream& out, std::span<const ExperimentResult> results);
std::string to_csv(std::span<const ExperimentResult> results);
/// Inverse of write_csv. Throws InvalidArgument on malformed input.
std::vector<ExperimentResult> parse_csv(std::istream& in);

/// Overrides applied from the command line to every case.
struct RunOverrides {
  std::optional<std::string> output;
  std::optional<int> max_iterations;
  std::optional<double> tolerance;
};

/// Resolve `target` as a config file path, else as a preset name.
std::vector<ExperimentConfig> resolve_target(const std::string& target);

/// Apply overrides to every case and re-validate.
void apply_overrides(std::vector<ExperimentConfig>& cases, const RunOverrides& overrides);

}  // namespace dnwr
