#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace testing {

using Matrix = std::vector<std::vector<double>>;

// Gaussian elimination with partial pivoting on a dense copy of the system.
inline std::vector<double> dense_solve(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0) throw std::runtime_error("dense_solve: singular matrix");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double sum = b[r];
    for (std::size_t c = r + 1; c < n; ++c) sum -= a[r][c] * x[c];
    x[r] = sum / a[r][r];
  }
  return x;
}

struct EndData {
  bool dirichlet = true;
  double value = 0.0;  // nodal value, or +x derivative for a Neumann end
};

struct StepInputs {
  double nu = 1.0, a1 = 0.0, a2 = 0.0, dx = 0.1, dt = 0.1;
  std::vector<double> current, delayed, source;
  EndData left, right;
};

// One implicit step written with explicit ghost nodes: unknowns u_{-1}, u_0..u_{n-1}, u_n.
// A Neumann end keeps the PDE row at its end node and adds the centred-difference
// derivative equation; a Dirichlet end pins the node and sets the unused ghost to zero.
inline std::vector<double> ghost_node_step(const StepInputs& in) {
  const std::size_t n = in.current.size();
  const std::size_t size = n + 2;
  Matrix a(size, std::vector<double>(size, 0.0));
  std::vector<double> b(size, 0.0);
  const double nu2 = in.nu * in.nu;
  auto col = [](std::size_t node) { return node + 1; };

  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t row = col(l);
    const bool pinned = (l == 0 && in.left.dirichlet) || (l == n - 1 && in.right.dirichlet);
    if (pinned) {
      a[row][row] = 1.0;
      b[row] = l == 0 ? in.left.value : in.right.value;
      continue;
    }
    a[row][row] = 1.0 / in.dt + in.a1 + 2.0 * nu2 / (in.dx * in.dx);
    a[row][row - 1] = -nu2 / (in.dx * in.dx);
    a[row][row + 1] = -nu2 / (in.dx * in.dx);
    b[row] = in.current[l] / in.dt - in.a2 * in.delayed[l] + in.source[l];
  }
  if (in.left.dirichlet) {
    a[0][0] = 1.0;
  } else {
    a[0][col(1)] = 1.0 / (2.0 * in.dx);
    a[0][0] = -1.0 / (2.0 * in.dx);
    b[0] = in.left.value;
  }
  const std::size_t last = size - 1;
  if (in.right.dirichlet) {
    a[last][last] = 1.0;
  } else {
    a[last][last] = 1.0 / (2.0 * in.dx);
    a[last][col(n - 2)] = -1.0 / (2.0 * in.dx);
    b[last] = in.right.value;
  }
  const auto x = dense_solve(std::move(a), std::move(b));
  return {x.begin() + 1, x.end() - 1};
}

// Backward Euler for u_t - nu^2 u_xx + a1 u = f with Dirichlet ends and no delay term.
// Returns [level][node] for levels 0..steps.
inline std::vector<std::vector<double>> no_delay_solve(
    double nu, double a1, double x_left, double dx, int nodes, double dt, int steps,
    const std::function<double(double, double)>& source,
    const std::function<double(double)>& initial, const std::function<double(double)>& left,
    const std::function<double(double)>& right) {
  std::vector<std::vector<double>> u(static_cast<std::size_t>(steps) + 1,
                                     std::vector<double>(static_cast<std::size_t>(nodes)));
  for (int l = 0; l < nodes; ++l) u[0][l] = initial(x_left + l * dx);
  const double c = nu * nu / (dx * dx);
  for (int m = 0; m < steps; ++m) {
    const double t = (m + 1) * dt;
    Matrix a(nodes, std::vector<double>(nodes, 0.0));
    std::vector<double> b(nodes);
    a[0][0] = 1.0;
    b[0] = left(t);
    a[nodes - 1][nodes - 1] = 1.0;
    b[nodes - 1] = right(t);
    for (int l = 1; l + 1 < nodes; ++l) {
      a[l][l - 1] = -c;
      a[l][l] = 1.0 / dt + a1 + 2.0 * c;
      a[l][l + 1] = -c;
      b[l] = u[m][l] / dt + source(x_left + l * dx, t);
    }
    u[m + 1] = dense_solve(std::move(a), std::move(b));
  }
  return u;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline std::vector<double> random_vector(std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform(lo, hi);
  return v;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace testing
