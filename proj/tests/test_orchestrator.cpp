#include <doctest.h>

#include <cmath>
#include <cstring>

#include "dnwr/errors.hpp"
#include "dnwr/initializers.hpp"
#include "dnwr/oracle.hpp"
#include "dnwr/orchestrator.hpp"

using namespace dnwr;

namespace {

constexpr Arrangement kAll[] = {Arrangement::Sweep, Arrangement::RedBlack,
                                Arrangement::CentralOutward};

Coefficients window(double horizon, double delay) {
  Coefficients c;
  c.x_left = 0.0;
  c.x_right = 5.0;
  c.horizon = horizon;
  c.delay = delay;
  c.delay_coeff = 0.028;
  return c;
}

std::vector<InterfaceTrace> sampled(const SpaceTimeGrid& grid, const Decomposition& d,
                                    const char* name) {
  const std::vector<TimeFunction> init{named_initializer(name)};
  return initialize_interfaces(grid, d, init);
}

std::vector<InterfaceTrace> scaled(std::vector<InterfaceTrace> traces, double alpha) {
  for (auto& t : traces) {
    for (auto& v : t.values) v *= alpha;
  }
  return traces;
}

double max_trace_gap(const std::vector<InterfaceTrace>& a, const std::vector<InterfaceTrace>& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t m = 0; m < a[i].values.size(); ++m) {
      gap = std::max(gap, std::abs(a[i].values[m] - b[i].values[m]));
    }
  }
  return gap;
}

bool identical(const std::vector<InterfaceTrace>& a, const std::vector<InterfaceTrace>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].values.size() != b[i].values.size() ||
        std::memcmp(a[i].values.data(), b[i].values.data(), a[i].values.size() * sizeof(double)) != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("orchestrator") {
  TEST_CASE("relaxation is a convex combination") {
    const InterfaceTrace fresh{1, {0.0, 1.0, 2.0}};
    const InterfaceTrace old{1, {0.0, 0.04, 0.16}};
    CHECK(relax_update(1.0, fresh, old).values == fresh.values);
    const InterfaceTrace zero{1, {0.0, 0.0, 0.0}};
    const auto half = relax_update(0.5, zero, old);
    CHECK(half.values[1] == doctest::Approx(0.02));
    CHECK(half.values[2] == doctest::Approx(0.08));
    for (double theta : {0.1, 0.3, 0.5, 0.9, 1.0}) {
      const auto same = relax_update(theta, old, old);
      for (std::size_t m = 0; m < 3; ++m) CHECK(same.values[m] == doctest::Approx(old.values[m]));
    }
    CHECK_THROWS_AS(relax_update(0.5, InterfaceTrace{1, {0.0, 1.0}}, old), ShapeMismatch);
    CHECK_THROWS_AS(relax_update(0.5, InterfaceTrace{2, {0.0, 1.0, 2.0}}, old), ShapeMismatch);
  }

  TEST_CASE("arrangement names and compatibility") {
    CHECK(parse_arrangement("arr1") == Arrangement::Sweep);
    CHECK(parse_arrangement("red-black") == Arrangement::RedBlack);
    CHECK(parse_arrangement("central") == Arrangement::CentralOutward);
    CHECK(to_string(Arrangement::RedBlack) == "redblack");
    CHECK_THROWS_AS(parse_arrangement("spiral"), InvalidArgument);
    CHECK_THROWS_AS(check_arrangement(Arrangement::CentralOutward, 4), EvenSubdomainCount);
    CHECK_THROWS_AS(check_arrangement(Arrangement::Sweep, 1), InvalidArgument);
    CHECK_NOTHROW(check_arrangement(Arrangement::CentralOutward, 5));
    CHECK_NOTHROW(check_arrangement(Arrangement::RedBlack, 4));

    const auto spec = ProblemSpec::error_equation(window(1.0, 0.5));
    const auto grid = build_grid(spec, 0.05, 0.1);
    const auto d = equal_partition(grid, 4);
    DnwrState s;
    s.traces = sampled(grid, d, "t2");
    CHECK_THROWS_AS(iterate_central(s, spec, grid, d, RunParams{}), EvenSubdomainCount);
  }

  TEST_CASE("dirichlet sides per arrangement") {
    using enum Side;
    CHECK(dirichlet_sides(Arrangement::Sweep, 4) == std::vector<Side>{Left, Left, Left});
    CHECK(dirichlet_sides(Arrangement::RedBlack, 5) == std::vector<Side>{Left, Right, Left, Right});
    CHECK(dirichlet_sides(Arrangement::CentralOutward, 5) ==
          std::vector<Side>{Right, Right, Left, Left});
  }

  TEST_CASE("zero guesses stay zero in error mode") {
    const auto spec = ProblemSpec::error_equation(window(1.0, 0.3));
    const auto grid = build_grid(spec, 0.1, 0.05);
    const auto d = equal_partition(grid, 5);
    for (Arrangement arr : kAll) {
      CAPTURE(to_string(arr));
      DnwrState s;
      s.traces = sampled(grid, d, "zero");
      const auto next = iterate(arr, s, spec, grid, d, RunParams{});
      CHECK(next.iteration == 1);
      REQUIRE(next.fields.size() == 5);
      for (const auto& f : next.fields) {
        for (double v : f.values()) CHECK(v == 0.0);
      }
      for (const auto& t : next.traces) {
        for (double v : t.values) CHECK(v == 0.0);
      }
      const auto run = run_dnwr(spec, grid, d, arr, RunParams{}, sampled(grid, d, "zero"));
      CHECK(run.record.iteration_count() == 1);
      CHECK(run.record.stop_reason == StopReason::ToleranceMet);
      CHECK(run.record.iterations.back().aggregate == 0.0);
    }
  }

  TEST_CASE("monodomain interface values are fixed points") {
    Coefficients c = window(1.0, 0.3);
    c.reaction = 0.5;
    const auto spec = manufactured_problem(c);
    const auto grid = build_grid(spec, 0.1, 0.02);
    const auto mono = monodomain_solve(spec, grid);
    for (const std::vector<double>& sizes :
         {std::vector<double>{1, 1, 1, 1, 1}, std::vector<double>{1.5, 0.5, 1, 0.5, 1.5}}) {
      const auto d = partition(grid, sizes);
      DnwrState s;
      for (int i = 0; i < d.interface_count(); ++i) s.traces.push_back(interface_values(mono, d, i));
      for (Arrangement arr : kAll) {
        CAPTURE(to_string(arr));
        RunParams p;
        p.mode = Mode::Full;
        const auto next = iterate(arr, s, spec, grid, d, p);
        CHECK(max_trace_gap(next.traces, s.traces) <= 1e-10);
      }
    }
  }

  TEST_CASE("error-mode iteration is linear in the traces") {
    const auto spec = ProblemSpec::error_equation(window(1.0, 0.3));
    const auto grid = build_grid(spec, 0.25, 0.05);
    const auto d = equal_partition(grid, 5);
    const auto base = sampled(grid, d, "t2");
    for (Arrangement arr : kAll) {
      CAPTURE(to_string(arr));
      DnwrState s;
      s.traces = base;
      const auto once = iterate(arr, s, spec, grid, d, RunParams{});
      for (double alpha : {2.0, -1.0, 0.37}) {
        DnwrState a;
        a.traces = scaled(base, alpha);
        const auto got = iterate(arr, a, spec, grid, d, RunParams{});
        CHECK(max_trace_gap(got.traces, scaled(once.traces, alpha)) <= 1e-12);
      }
    }
  }

  TEST_CASE("concurrent and sequential runs are bitwise identical") {
    const auto spec = ProblemSpec::error_equation(window(1.0, 0.3));
    const auto grid = build_grid(spec, 0.1, 0.01);
    const auto d = equal_partition(grid, 5);
    for (Arrangement arr : kAll) {
      CAPTURE(to_string(arr));
      RunParams seq;
      seq.max_iterations = 6;
      RunParams par = seq;
      par.concurrent = true;
      const auto a = run_dnwr(spec, grid, d, arr, seq, sampled(grid, d, "t2"));
      const auto b = run_dnwr(spec, grid, d, arr, par, sampled(grid, d, "t2"));
      CHECK(identical(a.traces, b.traces));
      REQUIRE(a.record.iterations.size() == b.record.iterations.size());
      for (std::size_t k = 0; k < a.record.iterations.size(); ++k) {
        CHECK(a.record.iterations[k].interface_norms == b.record.iterations[k].interface_norms);
      }
    }
  }

  TEST_CASE("sweep and red-black coincide on two strips") {
    const auto spec = ProblemSpec::error_equation(window(2.0, 0.5));
    const auto grid = build_grid(spec, 0.1, 0.05);
    const auto d = equal_partition(grid, 2);
    RunParams p;
    p.max_iterations = 3;
    p.tolerance = 1e-300;
    const auto a = run_dnwr(spec, grid, d, Arrangement::Sweep, p, sampled(grid, d, "sin"));
    const auto b = run_dnwr(spec, grid, d, Arrangement::RedBlack, p, sampled(grid, d, "sin"));
    CHECK(identical(a.traces, b.traces));
  }

  TEST_CASE("sweep error decays over the first iterations on the long window") {
    const auto spec = ProblemSpec::error_equation(window(10.0, 3.0));
    const auto grid = build_grid(spec, 0.1, 0.2);
    const auto d = equal_partition(grid, 5);
    RunParams p;
    p.max_iterations = 5;
    const auto run = run_dnwr(spec, grid, d, Arrangement::Sweep, p, sampled(grid, d, "t2"));
    REQUIRE(run.record.iterations.size() == 6);
    for (int k = 1; k <= 5; ++k) {
      CHECK(run.record.iterations[k].aggregate < run.record.iterations[k - 1].aggregate);
    }
  }

  TEST_CASE("red-black converges on the short window") {
    const auto spec = ProblemSpec::error_equation(window(0.1, 0.03));
    const auto grid = build_grid(spec, 0.1, 0.001);
    const auto d = equal_partition(grid, 5);
    RunParams p;
    p.max_iterations = 50;
    const auto run = run_dnwr(spec, grid, d, Arrangement::RedBlack, p, sampled(grid, d, "t2"));
    CHECK(run.record.stop_reason == StopReason::ToleranceMet);
    CHECK(run.record.iterations.back().aggregate <= 1e-6);
  }

  TEST_CASE("central-outward needs no more iterations than the sweep on the long window") {
    const auto spec = ProblemSpec::error_equation(window(10.0, 3.0));
    const auto grid = build_grid(spec, 0.1, 0.2);
    const auto d = equal_partition(grid, 5);
    const auto sweep = run_dnwr(spec, grid, d, Arrangement::Sweep, RunParams{}, sampled(grid, d, "t2"));
    const auto central =
        run_dnwr(spec, grid, d, Arrangement::CentralOutward, RunParams{}, sampled(grid, d, "t2"));
    CHECK(central.record.stop_reason == StopReason::ToleranceMet);
    CHECK(central.record.iteration_count() <= sweep.record.iteration_count());
  }

  TEST_CASE("run parameters are validated") {
    RunParams p;
    p.theta = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = RunParams{};
    p.tolerance = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = RunParams{};
    p.max_iterations = 0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);

    const auto spec = ProblemSpec::error_equation(window(1.0, 0.5));
    const auto grid = build_grid(spec, 0.1, 0.1);
    const auto d = equal_partition(grid, 5);
    auto short_traces = sampled(grid, d, "t2");
    short_traces.pop_back();
    CHECK_THROWS_AS(run_dnwr(spec, grid, d, Arrangement::Sweep, RunParams{}, short_traces),
                    ShapeMismatch);
  }
}
