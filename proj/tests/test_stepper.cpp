#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dnwr/errors.hpp"
#include "dnwr/oracle.hpp"
#include "dnwr/stepper.hpp"
#include "support.hpp"

using namespace dnwr;

namespace {

EndCondition end_of(const testing::EndData& e) {
  if (e.dirichlet) return InterfaceTrace{0, {0.0, e.value}};
  return FluxTrace{0, {0.0, e.value}};
}

testing::StepInputs random_inputs(std::size_t n) {
  testing::StepInputs in;
  in.nu = testing::uniform(0.2, 2.0);
  in.a1 = testing::uniform(0.0, 2.0);
  in.a2 = testing::uniform(-1.0, 1.0);
  in.dx = testing::uniform(0.05, 0.5);
  in.dt = testing::uniform(0.01, 1.0);
  in.current = testing::random_vector(n);
  in.delayed = testing::random_vector(n);
  in.source = testing::random_vector(n);
  in.left = {testing::uniform(0, 1) < 0.5, testing::uniform(-1, 1)};
  in.right = {testing::uniform(0, 1) < 0.5, testing::uniform(-1, 1)};
  return in;
}

std::vector<double> library_step(const testing::StepInputs& in) {
  const StepCoefficients c{in.nu, in.a1, in.a2, in.dx, in.dt};
  return step_subdomain(c, end_of(in.left), end_of(in.right), in.current, in.delayed, in.source, 0);
}

SubdomainField field_from(const std::vector<std::vector<double>>& levels) {
  SubdomainField f(0, 0, static_cast<int>(levels[0].size()), static_cast<int>(levels.size()), 1);
  for (std::size_t m = 0; m < levels.size(); ++m) {
    std::copy(levels[m].begin(), levels[m].end(), f.level(static_cast<int>(m)).begin());
  }
  return f;
}

ProblemSpec full_problem(Coefficients c, SpaceTimeFunction source, SpaceTimeFunction history,
                         TimeFunction left, TimeFunction right) {
  return ProblemSpec(c, std::move(source), std::move(history), std::move(left), std::move(right));
}

}  // namespace

TEST_SUITE("stepper") {
  TEST_CASE("zero data gives a zero step") {
    const std::vector<double> zero(6, 0.0);
    const StepCoefficients c{1.0, 0.3, 0.2, 0.1, 0.05};
    for (bool left_d : {true, false}) {
      for (bool right_d : {true, false}) {
        const auto next = step_subdomain(c, end_of({left_d, 0.0}), end_of({right_d, 0.0}), zero,
                                         zero, zero, 0);
        for (double v : next) CHECK(v == 0.0);
      }
    }
  }

  TEST_CASE("constants are steady states of pure diffusion") {
    const std::vector<double> constant(7, 2.5), zero(7, 0.0);
    const StepCoefficients c{1.3, 0.0, 0.0, 0.1, 0.2};
    const auto next = step_subdomain(c, end_of({true, 2.5}), end_of({true, 2.5}), constant, zero,
                                     zero, 0);
    for (double v : next) CHECK(v == doctest::Approx(2.5).epsilon(1e-14));
    const auto insulated = step_subdomain(c, end_of({false, 0.0}), end_of({true, 2.5}), constant,
                                          zero, zero, 0);
    for (double v : insulated) CHECK(v == doctest::Approx(2.5).epsilon(1e-14));
  }

  TEST_CASE("step matches a dense ghost-node solve on random configurations") {
    for (int trial = 0; trial < 40; ++trial) {
      const auto n = static_cast<std::size_t>(3 + trial % 10);
      const auto in = random_inputs(n);
      CAPTURE(trial);
      CAPTURE(in.left.dirichlet);
      CAPTURE(in.right.dirichlet);
      const auto expected = testing::ghost_node_step(in);
      const auto got = library_step(in);
      double scale = 1.0;
      for (double v : expected) scale = std::max(scale, std::abs(v));
      CHECK(testing::max_abs_diff(expected, got) <= 1e-12 * scale);
    }
  }

  TEST_CASE("workspace keeps the unmodified right-hand side") {
    auto in = random_inputs(6);
    in.left.dirichlet = true;
    in.right.dirichlet = false;
    const StepCoefficients c{in.nu, in.a1, in.a2, in.dx, in.dt};
    std::vector<double> next(6);
    StepWorkspace ws;
    step_subdomain(c, end_of(in.left), end_of(in.right), in.current, in.delayed, in.source, 0,
                   next, ws);
    for (std::size_t l = 0; l < 6; ++l) {
      CHECK(ws.rhs[l] == doctest::Approx(in.current[l] / in.dt - in.a2 * in.delayed[l] +
                                         in.source[l]));
    }
    CHECK(next == library_step(in));
  }

  TEST_CASE("step rejects mismatched shapes") {
    const std::vector<double> six(6, 0.0), five(5, 0.0);
    const StepCoefficients c{};
    CHECK_THROWS_AS(step_subdomain(c, end_of({true, 0}), end_of({true, 0}), six, five, six, 0),
                    ShapeMismatch);
    CHECK_THROWS_AS(step_subdomain(c, end_of({true, 0}), end_of({true, 0}), six, six, six, 1),
                    ShapeMismatch);
  }

  TEST_CASE("discrete maximum principle for nonnegative reaction") {
    Coefficients co;
    co.x_right = 1.0;
    co.horizon = 1.0;
    co.delay = 0.5;
    co.reaction = 0.7;
    auto zero2 = [](double, double) { return 0.0; };
    const auto spec = full_problem(co, zero2, zero2, [](double t) { return std::sin(5 * t) * 0.5 + 0.5; },
                                   [](double t) { return t; });
    const auto grid = build_grid(spec, 0.05, 0.01);
    const auto mono = monodomain_solve(spec, grid);
    for (double v : mono.values()) {
      CHECK(v >= -1e-15);
      CHECK(v <= 1.0 + 1e-15);
    }
  }

  TEST_CASE("error mode with zero traces gives a zero field") {
    Coefficients co;
    co.x_right = 1.0;
    co.delay_coeff = 0.5;
    const auto spec = ProblemSpec::error_equation(co);
    const auto grid = build_grid(spec, 0.1, 0.1);
    const auto d = equal_partition(grid, 2);
    const InterfaceTrace zero{0, std::vector<double>(grid.num_levels(), 0.0)};
    const auto f = solve_subdomain(spec, grid, d, 1, zero, zero, Mode::Error);
    for (double v : f.values()) CHECK(v == 0.0);
  }

  TEST_CASE("no-delay full solve matches an independent solver") {
    Coefficients co;
    co.x_left = -0.5;
    co.x_right = 1.5;
    co.horizon = 0.8;
    co.delay = 0.2;
    co.reaction = 0.4;
    co.delay_coeff = 0.0;
    co.diffusivity = 0.7;
    auto source = [](double x, double t) { return std::cos(x) * (1 + t * t); };
    auto history = [](double x, double t) { return std::sin(std::numbers::pi * x) + t; };
    auto left = [](double t) { return t; };
    auto right = [](double t) { return 1.0 - t; };
    const auto spec = full_problem(co, source, history, left, right);
    const auto grid = build_grid(spec, 0.1, 0.02);
    const auto mono = monodomain_solve(spec, grid);
    const auto ref = testing::no_delay_solve(
        0.7, 0.4, -0.5, 0.1, grid.num_nodes(), 0.02, grid.num_steps(), source,
        [&](double x) { return history(x, 0.0); }, left, right);
    double worst = 0.0;
    for (int m = 0; m < grid.num_levels(); ++m) {
      for (int l = 0; l < grid.num_nodes(); ++l) worst = std::max(worst, std::abs(mono.at(m, l) - ref[m][l]));
    }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("delayed operand equals the sampled history while t <= tau") {
    Coefficients co;
    co.x_right = 1.0;
    co.horizon = 1.0;
    co.delay = 0.3;
    co.delay_coeff = 0.8;
    auto history = [](double x, double t) { return std::exp(t) * std::cos(3 * x); };
    const auto spec = full_problem(co, [](double, double) { return 1.0; }, history,
                                   [](double) { return 0.0; }, [](double) { return 0.0; });
    const auto grid = build_grid(spec, 0.1, 0.05);
    const auto d = equal_partition(grid, 1);
    const int k = grid.delay_steps();
    int checked = 0;
    bool exact = true;
    auto observer = [&](int next_level, std::span<const double> delayed) {
      if (next_level > k) return;
      const double t = grid.t(next_level - k);
      for (int l = 0; l < grid.num_nodes(); ++l) exact = exact && delayed[l] == history(grid.x(l), t);
      ++checked;
    };
    const auto field = solve_subdomain(spec, grid, d, 0, sample_left_boundary(spec, grid, Mode::Full),
                                       sample_right_boundary(spec, grid, d, Mode::Full), Mode::Full,
                                       observer);
    CHECK(checked == k);
    CHECK(exact);
    CHECK(field.lookup(-k)[3] == history(grid.x(3), grid.t(-k)));
  }

  TEST_CASE("delay buffer returns history then solution levels") {
    const int nodes = 2, k = 3;
    std::vector<double> history;
    for (int h = -k; h <= 0; ++h) {
      history.push_back(h);
      history.push_back(10.0 * h);
    }
    DelayBuffer buf(nodes, k, history);
    CHECK(buf.lookup(-3)[0] == -3.0);
    CHECK(buf.lookup(-1)[1] == -10.0);
    for (int m = 1; m <= 7; ++m) {
      const std::vector<double> level{100.0 + m, 200.0 + m};
      buf.push(level);
      CHECK(buf.newest_level() == m);
      const int oldest = m - k;
      const auto old = buf.lookup(oldest);
      CHECK(old[0] == (oldest <= 0 ? oldest : 100.0 + oldest));
      CHECK(buf.lookup(m)[1] == 200.0 + m);
    }
    CHECK_THROWS_AS(buf.lookup(3), InvalidArgument);
    CHECK_THROWS_AS(buf.lookup(8), InvalidArgument);
    const std::vector<double> wide(3, 0.0);
    CHECK_THROWS_AS(buf.push(wide), ShapeMismatch);
    CHECK_THROWS_AS(DelayBuffer(2, 3, std::vector<double>(5)), ShapeMismatch);
  }

  TEST_CASE("dirichlet trace copies the end node") {
    std::vector<std::vector<double>> levels;
    for (int m = 0; m < 4; ++m) {
      const double t = 0.2 * m;
      levels.push_back({1.0, 2.0, t * t});
    }
    SubdomainField f(2, 10, 3, 4, 1);
    for (int m = 0; m < 4; ++m) std::copy(levels[m].begin(), levels[m].end(), f.level(m).begin());
    const auto right = extract_dirichlet_trace(f, Side::Right);
    CHECK(right.interface_index == 2);
    CHECK(right.values[1] == doctest::Approx(0.04));
    CHECK(right.values[2] == doctest::Approx(0.16));
    const auto left = extract_dirichlet_trace(f, Side::Left);
    CHECK(left.interface_index == 1);
    CHECK(left.values == std::vector<double>(4, 1.0));
  }

  TEST_CASE("one-sided flux is exact up to quadratics") {
    const SpaceTimeGrid grid(0.0, 0.1, 3, 1.0, 1, 1);
    const auto constant = extract_flux(field_from({{3, 3, 3}, {3, 3, 3}}), grid, Side::Left);
    CHECK(constant.values[1] == doctest::Approx(0.0));
    const auto linear = field_from({{0.0, 0.1, 0.2}, {0.0, 0.1, 0.2}});
    CHECK(extract_flux(linear, grid, Side::Left).values[0] == doctest::Approx(1.0));
    CHECK(extract_flux(linear, grid, Side::Right).values[1] == doctest::Approx(1.0));
    const auto quadratic = field_from({{0.0, 0.01, 0.04}});
    CHECK(extract_flux(quadratic, grid, Side::Right).values[0] == doctest::Approx(0.4));
    CHECK(extract_flux(quadratic, grid, Side::Left).values[0] == doctest::Approx(0.0).epsilon(1e-14));

    const SpaceTimeGrid two(0.0, 0.1, 2, 1.0, 1, 1);
    CHECK_THROWS_AS(extract_flux(field_from({{0.0, 1.0}}), two, Side::Left), TooFewNodes);
  }

  TEST_CASE("transmission flux reproduces the undecomposed solution") {
    Coefficients co;
    co.x_right = 2.0;
    co.horizon = 1.0;
    co.delay = 0.25;
    co.reaction = 0.5;
    co.delay_coeff = 0.6;
    co.diffusivity = 0.9;
    const auto spec = manufactured_problem(co);
    const auto grid = build_grid(spec, 0.1, 0.05);
    const std::vector<double> sizes{0.8, 1.2};
    const auto d = partition(grid, sizes);
    const auto mono = monodomain_solve(spec, grid);
    const auto gamma = interface_values(mono, d, 0);
    const auto coeffs = StepCoefficients::from(spec, grid);

    // Dirichlet strip on the left hands its flux to a Neumann strip on the right, and back.
    const auto left_d = solve_subdomain(spec, grid, d, 0, sample_left_boundary(spec, grid, Mode::Full),
                                        gamma, Mode::Full);
    const auto flux_r = extract_transmission_flux(left_d, coeffs, grid, Side::Right);
    const auto right_n = solve_subdomain(spec, grid, d, 1, flux_r,
                                         sample_right_boundary(spec, grid, d, Mode::Full), Mode::Full);
    const auto right_d = solve_subdomain(spec, grid, d, 1, gamma,
                                         sample_right_boundary(spec, grid, d, Mode::Full), Mode::Full);
    const auto flux_l = extract_transmission_flux(right_d, coeffs, grid, Side::Left);
    const auto left_n = solve_subdomain(spec, grid, d, 0, sample_left_boundary(spec, grid, Mode::Full),
                                        flux_l, Mode::Full);
    double worst = 0.0;
    for (int m = 0; m < grid.num_levels(); ++m) {
      for (int l = 0; l < right_n.local_nodes(); ++l) {
        worst = std::max(worst, std::abs(right_n.at(m, l) - mono.at(m, d.first_node(1) + l)));
      }
      for (int l = 0; l < left_n.local_nodes(); ++l) {
        worst = std::max(worst, std::abs(left_n.at(m, l) - mono.at(m, l)));
      }
    }
    CHECK(worst <= 1e-12);

    // The one-sided flux differs from it by a discretization error, not by rounding.
    const auto one_sided = extract_flux(left_d, grid, Side::Right);
    double gap = 0.0;
    for (int m = 1; m < grid.num_levels(); ++m) {
      gap = std::max(gap, std::abs(one_sided.values[m] - flux_r.values[m]));
    }
    CHECK(gap > 1e-6);
    CHECK(gap < 1e-1);
  }
}
