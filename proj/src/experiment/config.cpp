#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dnwr/errors.hpp"
#include "dnwr/experiment.hpp"
#include "dnwr/initializers.hpp"

namespace dnwr {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> items;
  std::size_t start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    items.push_back(trim(value.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

double parse_real(const std::string& key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(key, "'" + std::string(text) + "' is not a finite real number");
  }
  return value;
}

int parse_int(const std::string& key, std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key, "'" + std::string(text) + "' is not an integer");
  }
  return value;
}

bool parse_bool(const std::string& key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key, "'" + std::string(text) + "' is not a boolean");
}

std::vector<double> parse_reals(const std::string& key, std::string_view text) {
  std::vector<double> out;
  for (auto item : split_list(text)) out.push_back(parse_real(key, item));
  return out;
}

std::string format_real(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F format) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += format(items[i]);
  }
  return out;
}

void apply(ExperimentConfig& config, const std::string& key, std::string_view value) {
  if (key == "label") {
    config.label = std::string(value);
  } else if (key == "arrangement") {
    try {
      config.arrangement = parse_arrangement(value);
    } catch (const InvalidArgument& e) {
      throw ConfigError(key, e.what());
    }
  } else if (key == "mode") {
    if (value == "error") {
      config.mode = Mode::Error;
    } else if (value == "full") {
      config.mode = Mode::Full;
    } else {
      throw ConfigError(key, "expected 'error' or 'full'");
    }
  } else if (key == "x_left") {
    config.x_left = parse_real(key, value);
  } else if (key == "x_right") {
    config.x_right = parse_real(key, value);
  } else if (key == "subdomains") {
    config.subdomains = parse_int(key, value);
    config.sizes.clear();
  } else if (key == "sizes") {
    config.sizes = parse_reals(key, value);
  } else if (key == "nu") {
    config.nu = parse_real(key, value);
  } else if (key == "a1") {
    config.a1 = parse_real(key, value);
  } else if (key == "a2") {
    config.a2 = parse_real(key, value);
  } else if (key == "tau") {
    config.tau = parse_real(key, value);
  } else if (key == "T") {
    config.horizon = parse_real(key, value);
  } else if (key == "dx") {
    config.dx = parse_real(key, value);
  } else if (key == "dt") {
    config.dt = parse_real(key, value);
  } else if (key == "theta") {
    config.thetas = parse_reals(key, value);
  } else if (key == "init") {
    config.initializers.clear();
    for (auto item : split_list(value)) config.initializers.emplace_back(item);
  } else if (key == "tolerance") {
    config.tolerance = parse_real(key, value);
  } else if (key == "max_iterations") {
    config.max_iterations = parse_int(key, value);
  } else if (key == "flux") {
    if (value == "conservative") {
      config.flux = FluxScheme::Conservative;
    } else if (value == "one-sided") {
      config.flux = FluxScheme::OneSided;
    } else {
      throw ConfigError(key, "expected 'conservative' or 'one-sided'");
    }
  } else if (key == "concurrent") {
    config.concurrent = parse_bool(key, value);
  } else if (key == "output") {
    config.output = std::string(value);
  } else {
    throw ConfigError(key, "unknown key");
  }
}

}  // namespace

Coefficients ExperimentConfig::coefficients() const {
  return Coefficients{nu, a1, a2, tau, horizon, x_left, x_right};
}

std::vector<double> ExperimentConfig::strip_sizes() const {
  if (!sizes.empty()) return sizes;
  if (subdomains < 1) return {};
  return std::vector<double>(static_cast<std::size_t>(subdomains),
                             (x_right - x_left) / subdomains);
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string key(trim(view.substr(0, eq)));
    const auto value = trim(view.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
    if (!seen.insert(key).second) throw ConfigError(key, "given more than once");
    if (value.empty()) throw ConfigError(key, "empty value");
    apply(config, key, value);
  }
  validate_config(config);
  return config;
}

ExperimentConfig parse_config_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_config(in);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("path", "cannot open '" + path + "'");
  return parse_config(in);
}

std::string to_config_text(const ExperimentConfig& c) {
  std::ostringstream out;
  if (!c.label.empty()) out << "label = " << c.label << '\n';
  out << "arrangement = " << to_string(c.arrangement) << '\n'
      << "mode = " << to_string(c.mode) << '\n'
      << "x_left = " << format_real(c.x_left) << '\n'
      << "x_right = " << format_real(c.x_right) << '\n';
  if (c.sizes.empty()) {
    out << "subdomains = " << c.subdomains << '\n';
  } else {
    out << "sizes = " << join(c.sizes, format_real) << '\n';
  }
  out << "nu = " << format_real(c.nu) << '\n'
      << "a1 = " << format_real(c.a1) << '\n'
      << "a2 = " << format_real(c.a2) << '\n'
      << "tau = " << format_real(c.tau) << '\n'
      << "T = " << format_real(c.horizon) << '\n'
      << "dx = " << format_real(c.dx) << '\n'
      << "dt = " << format_real(c.dt) << '\n'
      << "theta = " << join(c.thetas, format_real) << '\n'
      << "init = " << join(c.initializers, [](const std::string& s) { return s; }) << '\n'
      << "tolerance = " << format_real(c.tolerance) << '\n'
      << "max_iterations = " << c.max_iterations << '\n'
      << "flux = " << (c.flux == FluxScheme::Conservative ? "conservative" : "one-sided") << '\n'
      << "concurrent = " << (c.concurrent ? "true" : "false") << '\n';
  if (!c.output.empty()) out << "output = " << c.output << '\n';
  return out.str();
}

void validate_config(const ExperimentConfig& config) {
  if (!(config.nu > 0.0)) throw ConfigError("nu", "must be positive");
  if (!(config.tau > 0.0)) throw ConfigError("tau", "must be positive");
  if (!(config.horizon > 0.0)) throw ConfigError("T", "must be positive");
  if (!(config.x_left < config.x_right)) throw ConfigError("x_right", "must exceed x_left");
  if (!(config.dx > 0.0)) throw ConfigError("dx", "must be positive");
  if (!(config.dt > 0.0)) throw ConfigError("dt", "must be positive");
  if (!(config.tolerance > 0.0)) throw ConfigError("tolerance", "must be positive");
  if (config.max_iterations < 1) throw ConfigError("max_iterations", "must be at least 1");
  if (config.thetas.empty()) throw ConfigError("theta", "needs at least one value");
  for (double theta : config.thetas) {
    if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("theta", "values must lie in (0, 1]");
  }
  const std::string size_key = config.sizes.empty() ? "subdomains" : "sizes";
  if (config.sizes.empty() && config.subdomains < 2) {
    throw ConfigError("subdomains", "at least 2 subdomains are required");
  }
  if (!config.sizes.empty() && config.sizes.size() < 2) {
    throw ConfigError("sizes", "at least 2 subdomains are required");
  }

  const ProblemSpec spec = ProblemSpec::error_equation(config.coefficients());
  std::optional<SpaceTimeGrid> grid;
  try {
    grid = build_grid(spec, config.dx, config.dt);
  } catch (const NonCommensurate& e) {
    const std::string what = e.what();
    const std::string key = what.rfind("domain/dx", 0) == 0 ? "dx" : what.rfind("T/dt", 0) == 0 ? "T" : "dt";
    throw ConfigError(key, std::string("commensurability rule violated: ") + e.what());
  }

  const auto sizes = config.strip_sizes();
  int interfaces = 0;
  try {
    const Decomposition decomp = partition(*grid, sizes);
    interfaces = decomp.interface_count();
    check_arrangement(config.arrangement, decomp.subdomain_count());
  } catch (const EvenSubdomainCount& e) {
    throw ConfigError("arrangement", e.what());
  } catch (const Error& e) {
    throw ConfigError(size_key, e.what());
  }

  if (config.initializers.size() != 1 &&
      config.initializers.size() != static_cast<std::size_t>(interfaces)) {
    throw ConfigError("init", "expected 1 or " + std::to_string(interfaces) + " initializers, got " +
                                  std::to_string(config.initializers.size()));
  }
  const auto names = initializer_names();
  for (const auto& name : config.initializers) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ConfigError("init", "unknown initializer '" + name + "'");
    }
  }
}

}  // namespace dnwr
