#include "phsolve/grid.hpp"

#include <string>

#include "phsolve/errors.hpp"

namespace phsolve {

Grid make_grid(double x_min, double x_max, int n) {
  if (!(x_min < x_max)) {
    throw ConfigError("make_grid: x_min must be < x_max (got [" + std::to_string(x_min) + ", " +
                      std::to_string(x_max) + "])");
  }
  if (n < 3) {
    throw ConfigError("make_grid: n too small (got " + std::to_string(n) + ", need >= 3)");
  }
  Grid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n = n;
  g.h = (x_max - x_min) / static_cast<double>(n + 1);
  g.points.resize(n);
  for (int j = 0; j < n; ++j) {
    g.points[j] = x_min + (j + 1) * g.h;
  }
  return g;
}

Grid refine_grid(const Grid& g) { return make_grid(g.x_min, g.x_max, 2 * g.n + 1); }

int stencil_half_width(Scheme scheme) { return scheme == Scheme::central2 ? 1 : 2; }

DiffMatrix diff_matrix(const Grid& grid, DiffOrder order, Scheme scheme) {
  const int n = grid.n;
  const double h = grid.h;

  // Stencil coefficients by offset; offsets outside the grid are dropped
  // (Dirichlet truncation). First-derivative stencils are antisymmetric in
  // the offset, second-derivative ones symmetric, so the assembled matrices
  // inherit exact anti/symmetry.
  std::vector<std::pair<int, double>> stencil;
  if (order == DiffOrder::first) {
    if (scheme == Scheme::central2) {
      stencil = {{-1, -1.0 / (2.0 * h)}, {1, 1.0 / (2.0 * h)}};
    } else {
      stencil = {{-2, 1.0 / (12.0 * h)},
                 {-1, -8.0 / (12.0 * h)},
                 {1, 8.0 / (12.0 * h)},
                 {2, -1.0 / (12.0 * h)}};
    }
  } else {
    const double h2 = h * h;
    if (scheme == Scheme::central2) {
      stencil = {{-1, 1.0 / h2}, {0, -2.0 / h2}, {1, 1.0 / h2}};
    } else {
      stencil = {{-2, -1.0 / (12.0 * h2)},
                 {-1, 16.0 / (12.0 * h2)},
                 {0, -30.0 / (12.0 * h2)},
                 {1, 16.0 / (12.0 * h2)},
                 {2, -1.0 / (12.0 * h2)}};
    }
  }

  DiffMatrix d;
  d.order = order;
  d.scheme = scheme;
  d.grid = grid;
  d.matrix = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (const auto& [off, c] : stencil) {
      const int j = i + off;
      if (j >= 0 && j < n) d.matrix(i, j) = c;
    }
  }
  return d;
}

}  // namespace phsolve
