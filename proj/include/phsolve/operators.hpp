#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <utility>

#include "phsolve/grid.hpp"
#include "phsolve/model.hpp"

namespace phsolve {

enum class Hermiticity { hermitian, non_hermitian };

/// continuum: the differential operator is discretized directly (p^2 -> -D2).
/// similarity: the non-Hermitian matrix is the exact conjugation
///             diag(e^f) H_H diag(e^-f) of the discrete Hermitian partner,
///             hence isospectral to it by construction.
enum class BuildMode { continuum, similarity };

/// Dense operator on the grid. All catalog operators are real matrices:
/// with p = -i d/dx, the symmetrized i(f'p + pf') is literally
/// f'D1 + D1 f', and the momentum-space -i(g'x + xg') with x = +i d/dp
/// reduces to the same real combination.
struct OperatorMatrix {
  Eigen::MatrixXd matrix;
  Hermiticity hermiticity = Hermiticity::hermitian;
  BuildMode mode = BuildMode::continuum;
  Grid grid;                    // the grid (x-axis grid in 2D)
  std::optional<Grid> grid_y;   // second axis for dimension 2
  std::string model_name;
  /// For similarity mode: the conjugated Hermitian partner.
  std::shared_ptr<const Eigen::MatrixXd> hermitian_partner;

  bool is_2d() const { return grid_y.has_value(); }
  /// Measure weight of one grid cell (h, or hx*hy in 2D).
  double cell_measure() const { return is_2d() ? grid.h * grid_y->h : grid.h; }
};

/// Positive diagonal metric eta_j = e^{2 f(x_j)}.
struct MetricMatrix {
  Eigen::VectorXd diagonal;
  double log_condition = 0.0;  // 2 (max f - min f) over the grid
};

/// H_H = p^2 + V + f'^2 as a real symmetric matrix -D2 + diag(V + f'^2).
/// Works in either representation (momentum: x^2 + V(p) + g'^2 -> -D2 + diag).
OperatorMatrix build_hermitian(const Grid& grid, const ModelDefinition& model, Scheme scheme);

/// H = p^2 + V + i(f'p + pf').
///   continuum:  -D2 + diag(V) + (F D1 + D1 F), F = diag(f'(x_j))
///   similarity: entries (H_H)_jk e^{f(x_j) - f(x_k)}; per-entry exponent
///               guard at 300 (only entries inside the band are formed).
OperatorMatrix build_pseudo(const Grid& grid, const ModelDefinition& model, Scheme scheme,
                            BuildMode mode);

MetricMatrix build_metric(const Grid& grid, const ModelDefinition& model);

/// Momentum-space dual: treating the grid variable as p and x = +i d/dp,
/// returns the Hermitian partner x^2 + V(p) + g'(p)^2 and the non-Hermitian
/// dual x^2 + V(p) - i(g'x + xg') (continuum assembly).
std::pair<OperatorMatrix, OperatorMatrix> build_momentum_dual(const Grid& grid_p,
                                                              const ModelDefinition& model,
                                                              Scheme scheme);

/// Two-dimensional separable construction via Kronecker sums:
/// H_H = (-D2 (x) I + I (x) -D2) + diag(V1 + V2 + f1'^2 + f2'^2), and H with
/// the first-order terms applied per axis. Returns (H_H, H_mode).
std::pair<OperatorMatrix, OperatorMatrix> build_2d(const Grid& grid_x, const Grid& grid_y,
                                                   const ModelDefinition& model, Scheme scheme,
                                                   BuildMode mode);

MetricMatrix build_metric_2d(const Grid& grid_x, const Grid& grid_y,
                             const ModelDefinition& model);

/// Exact samples f(x_j) / f'(x_j) / V(x_j) on the grid.
Eigen::VectorXd sample_values(const FunctionSpec& spec, const Grid& grid);
Eigen::VectorXd sample_derivatives(const FunctionSpec& spec, const Grid& grid);

}  // namespace phsolve
