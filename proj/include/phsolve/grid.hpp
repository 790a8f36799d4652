#pragma once

#include <Eigen/Dense>
#include <vector>

namespace phsolve {

/// Uniform sample of the open interval (x_min, x_max) with Dirichlet convention:
/// functions are treated as zero at the endpoints, which are not grid points.
struct Grid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n = 0;        ///< number of interior points
  double h = 0.0;   ///< spacing (x_max - x_min) / (n + 1)
  std::vector<double> points;  ///< x_j = x_min + (j+1) h, j = 0..n-1

  double length() const { return x_max - x_min; }
};

/// n >= 3 is the hard structural minimum (one central-stencil row);
/// spectral-quality runs are validated for n >= 8 at the config layer.
Grid make_grid(double x_min, double x_max, int n);

/// Refines so that the spacing exactly halves: n -> 2n + 1.
Grid refine_grid(const Grid& g);

enum class DiffOrder { first, second };
enum class Scheme { central2, central4 };

/// Dense banded differentiation matrix with Dirichlet truncation
/// (stencil entries falling outside the grid are dropped).
struct DiffMatrix {
  DiffOrder order = DiffOrder::first;
  Scheme scheme = Scheme::central2;
  Eigen::MatrixXd matrix;
  Grid grid;
};

DiffMatrix diff_matrix(const Grid& grid, DiffOrder order, Scheme scheme);

/// Half-width of the stencil (1 for central2, 2 for central4); residual
/// checks exclude a boundary band of this width.
int stencil_half_width(Scheme scheme);

}  // namespace phsolve
