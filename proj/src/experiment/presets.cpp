#include <string>

#include "dnwr/experiment.hpp"

namespace dnwr {

namespace {

// Five equal strips of (0,5), a1 = 0, a2 = 0.028, h^0 = t^2, error equations.
ExperimentConfig base_case() {
  ExperimentConfig c;
  c.mode = Mode::Error;
  c.x_left = 0.0;
  c.x_right = 5.0;
  c.subdomains = 5;
  c.a1 = 0.0;
  c.a2 = 0.028;
  c.dx = 0.1;
  c.thetas = {0.5};
  c.initializers = {"t2"};
  return c;
}

ExperimentConfig long_window(ExperimentConfig c) {
  c.tau = 3.0;
  c.horizon = 10.0;
  c.dt = 0.2;
  return c;
}

ExperimentConfig short_window(ExperimentConfig c) {
  c.tau = 0.03;
  c.horizon = 0.1;
  c.dt = 0.001;
  return c;
}

// T = 1, tau = 0.3; dt = 0.01 keeps tau/dt integral.
ExperimentConfig unit_window(ExperimentConfig c) {
  c.tau = 0.3;
  c.horizon = 1.0;
  c.dt = 0.01;
  return c;
}

ExperimentConfig with(ExperimentConfig c, Arrangement arrangement, std::string label = {}) {
  c.arrangement = arrangement;
  c.label = std::move(label);
  return c;
}

std::vector<ExperimentConfig> both_reactions(ExperimentConfig c) {
  std::vector<ExperimentConfig> cases;
  for (double a1 : {0.0, 1.0}) {
    c.a1 = a1;
    c.label = a1 == 0.0 ? "a1=0" : "a1=1";
    cases.push_back(c);
  }
  return cases;
}

const std::vector<double> kUnequalSizes{1.5, 0.5, 1.0, 0.5, 1.5};
const std::vector<std::string> kDistinctInits{"t2", "t", "sin", "piecewise"};
const std::vector<double> kThetaTriple{0.3, 0.5, 0.7};

std::vector<Preset> build_presets() {
  std::vector<Preset> out;
  const struct {
    const char* tag;
    Arrangement arrangement;
    const char* what;
  } arrangements[] = {
      {"arr1", Arrangement::Sweep, "sequential sweep"},
      {"arr2", Arrangement::RedBlack, "red-black"},
      {"arr3", Arrangement::CentralOutward, "central-outward"},
  };
  for (const auto& a : arrangements) {
    out.push_back({std::string(a.tag) + "-short",
                   std::string(a.what) + ", 5 equal strips of (0,5), T=0.1, tau=0.03, dx=0.1, "
                                         "dt=0.001, theta=0.5, h0=t^2",
                   {with(short_window(base_case()), a.arrangement)}});
    out.push_back({std::string(a.tag) + "-long",
                   std::string(a.what) + ", 5 equal strips of (0,5), T=10, tau=3, dx=0.1, "
                                         "dt=0.2, theta=0.5, h0=t^2",
                   {with(long_window(base_case()), a.arrangement)}});
  }

  {
    Preset p{"subdomain-sweep",
             "central-outward, S in {3,5,7} equal strips of (0,5) with 10 cells each "
             "(dx = 0.5/S), T=0.1, tau=0.03, dt=0.001, theta=0.5, a1 in {0,1}",
             {}};
    for (double a1 : {0.0, 1.0}) {
      for (int strips : {3, 5, 7}) {
        ExperimentConfig c = with(short_window(base_case()), Arrangement::CentralOutward);
        c.subdomains = strips;
        c.dx = 5.0 / (10.0 * strips);
        c.a1 = a1;
        c.label = "S=" + std::to_string(strips) + (a1 == 0.0 ? " a1=0" : " a1=1");
        p.cases.push_back(c);
      }
    }
    out.push_back(std::move(p));
  }

  {
    ExperimentConfig c = with(unit_window(base_case()), Arrangement::CentralOutward);
    c.sizes = kUnequalSizes;
    c.thetas = kThetaTriple;
    out.push_back({"unequal-sizes",
                   "central-outward, strip widths 1.5, 0.5, 1, 0.5, 1.5, T=1, tau=0.3, dx=0.1, "
                   "dt=0.01 (dt reconstructed), theta in {0.3,0.5,0.7}, h0=t^2, a1 in {0,1}",
                   both_reactions(c)});
  }
  {
    ExperimentConfig c = with(unit_window(base_case()), Arrangement::CentralOutward);
    c.initializers = kDistinctInits;
    c.thetas = kThetaTriple;
    out.push_back({"distinct-inits",
                   "central-outward, 5 equal strips, h0 = t^2, t, sin(t), piecewise, T=1, "
                   "tau=0.3, dx=0.1, dt=0.01 (dt reconstructed), theta in {0.3,0.5,0.7}, "
                   "a1 in {0,1}",
                   both_reactions(c)});
  }
  {
    ExperimentConfig c = with(unit_window(base_case()), Arrangement::CentralOutward);
    c.sizes = kUnequalSizes;
    c.initializers = kDistinctInits;
    c.thetas = kThetaTriple;
    out.push_back({"unequal-plus-distinct",
                   "central-outward, strip widths 1.5, 0.5, 1, 0.5, 1.5 and h0 = t^2, t, "
                   "sin(t), piecewise, T=1, tau=0.3, dx=0.1, dt=0.01 (dt reconstructed), "
                   "theta in {0.3,0.5,0.7}, a1 in {0,1}",
                   both_reactions(c)});
  }
  {
    ExperimentConfig c = with(long_window(base_case()), Arrangement::CentralOutward);
    c.thetas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    out.push_back({"theta-sweep",
                   "central-outward, 5 equal strips, long window (T=10, tau=3, dt=0.2), "
                   "theta = 0.1 ... 1.0",
                   {c}});
  }
  {
    ExperimentConfig c = with(long_window(base_case()), Arrangement::Sweep);
    c.subdomains = 2;
    c.tolerance = 1e-14;
    c.max_iterations = 2;
    out.push_back({"two-subdomain-twostep",
                   "two equal strips of (0,5), long window, theta=0.5, h0=t^2; the interface "
                   "error vanishes after the first update",
                   {c}});
  }
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace dnwr
