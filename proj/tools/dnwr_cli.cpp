// Command-line front end: run a config file or a named preset and emit CSV.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "dnwr/errors.hpp"
#include "dnwr/experiment.hpp"

namespace {

int list_presets(bool verbose) {
  for (const auto& preset : dnwr::presets()) {
    std::cout << preset.name << "\n    " << preset.description << '\n';
    if (verbose) {
      for (const auto& c : preset.cases) {
        std::cout << "    ---\n";
        std::string text = dnwr::to_config_text(c);
        std::size_t start = 0;
        while (start < text.size()) {
          const auto nl = text.find('\n', start);
          std::cout << "    " << text.substr(start, nl - start) << '\n';
          start = nl + 1;
        }
      }
    }
  }
  return 0;
}

int run(const std::string& target, const dnwr::RunOverrides& overrides) {
  auto cases = dnwr::resolve_target(target);
  dnwr::apply_overrides(cases, overrides);

  std::vector<dnwr::ExperimentResult> results;
  results.reserve(cases.size());
  for (const auto& c : cases) {
    results.push_back(dnwr::run_experiment(c));
    for (const auto& r : results.back().runs) {
      std::cerr << (c.label.empty() ? target : c.label) << ": theta=" << r.theta << " iterations="
                << r.record.iteration_count() << " (" << dnwr::to_string(r.record.stop_reason)
                << ")\n";
    }
  }

  const std::string& path = cases.front().output;
  if (path.empty()) {
    dnwr::write_csv(std::cout, results);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dnwr::ConfigError("output", "cannot write '" + path + "'");
  dnwr::write_csv(out, results);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet-Neumann waveform relaxation experiments for the delayed "
               "reaction-diffusion equation"};
  app.require_subcommand(1);

  bool verbose = false;
  auto* list_cmd = app.add_subcommand("list-presets", "List the built-in experiment presets");
  list_cmd->add_flag("-v,--verbose", verbose, "Print the full configuration of every case");

  std::string target;
  dnwr::RunOverrides overrides;
  auto* run_cmd = app.add_subcommand("run", "Run a config file or preset and write CSV");
  run_cmd->add_option("target", target, "Config file path or preset name")->required();
  run_cmd->add_option_function<std::string>(
      "-o,--output", [&](const std::string& v) { overrides.output = v; },
      "CSV output path (default: config 'output' key, else stdout)");
  run_cmd->add_option_function<int>(
      "--max-iter", [&](const int& v) { overrides.max_iterations = v; },
      "Override max_iterations");
  run_cmd->add_option_function<double>(
      "--tol", [&](const double& v) { overrides.tolerance = v; }, "Override tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list_cmd) return list_presets(verbose);
    return run(target, overrides);
  } catch (const dnwr::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const dnwr::Error& e) {
    std::cerr << "setup error: " << e.what() << '\n';
    return 1;
  }
}
