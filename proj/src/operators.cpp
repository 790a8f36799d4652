#include "phsolve/operators.hpp"

#include <cmath>
#include <string>

#include "phsolve/errors.hpp"

namespace phsolve {

namespace {

constexpr double kSimilarityExpGuard = 300.0;
constexpr double kMetricExpGuard = 700.0;

ModelDefinition axis_model(const ModelDefinition& m, int axis) {
  ModelDefinition a;
  a.name = m.name + (axis == 0 ? "[x]" : "[y]");
  a.dimension = 1;
  a.representation = m.representation;
  a.V = {m.V.at(axis)};
  a.f = {m.f.at(axis)};
  return a;
}

// kron(A, I_m) + kron(I_n, B) for dense A (n x n), B (m x m).
Eigen::MatrixXd kron_sum(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const auto n = A.rows();
  const auto m = B.rows();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (A(i, j) != 0.0) {
        for (Eigen::Index k = 0; k < m; ++k) K(i * m + k, j * m + k) += A(i, j);
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) K.block(i * m, i * m, m, m) += B;
  return K;
}

void require_1d(const ModelDefinition& model, const char* who) {
  model.validate();
  if (model.dimension != 1) {
    throw ConfigError(std::string(who) + ": model '" + model.name + "' is not one-dimensional");
  }
}

}  // namespace

Eigen::VectorXd sample_values(const FunctionSpec& spec, const Grid& grid) {
  Eigen::VectorXd v(grid.n);
  for (int j = 0; j < grid.n; ++j) v[j] = spec.eval(grid.points[j]);
  return v;
}

Eigen::VectorXd sample_derivatives(const FunctionSpec& spec, const Grid& grid) {
  Eigen::VectorXd v(grid.n);
  for (int j = 0; j < grid.n; ++j) v[j] = spec.eval_prime(grid.points[j]);
  return v;
}

OperatorMatrix build_hermitian(const Grid& grid, const ModelDefinition& model, Scheme scheme) {
  require_1d(model, "build_hermitian");
  Eigen::VectorXd Vv, fp;
  try {
    Vv = sample_values(model.V[0], grid);
    fp = sample_derivatives(model.f[0], grid);
  } catch (const EvalError& e) {
    throw ConstructionError(std::string("build_hermitian: ") + e.what());
  }

  const Eigen::VectorXd diag = Vv.array() + fp.array().square();
  if (!diag.allFinite()) {
    for (int j = 0; j < grid.n; ++j) {
      if (!std::isfinite(diag[j])) {
        throw ConstructionError("build_hermitian: non-finite potential at x = " +
                                std::to_string(grid.points[j]));
      }
    }
  }

  OperatorMatrix op;
  op.matrix = -diff_matrix(grid, DiffOrder::second, scheme).matrix;
  op.matrix.diagonal() += diag;
  op.hermiticity = Hermiticity::hermitian;
  op.mode = BuildMode::continuum;
  op.grid = grid;
  op.model_name = model.name;
  return op;
}

OperatorMatrix build_pseudo(const Grid& grid, const ModelDefinition& model, Scheme scheme,
                            BuildMode mode) {
  require_1d(model, "build_pseudo");

  if (mode == BuildMode::similarity) {
    OperatorMatrix hermitian = build_hermitian(grid, model, scheme);
    Eigen::VectorXd fv;
    try {
      fv = sample_values(model.f[0], grid);
    } catch (const EvalError& e) {
      throw ConstructionError(std::string("build_pseudo: ") + e.what());
    }

    OperatorMatrix op;
    op.matrix = Eigen::MatrixXd::Zero(grid.n, grid.n);
    for (int j = 0; j < grid.n; ++j) {
      for (int k = 0; k < grid.n; ++k) {
        const double a = hermitian.matrix(j, k);
        if (a == 0.0) continue;
        const double expo = fv[j] - fv[k];
        if (std::abs(expo) > kSimilarityExpGuard) {
          throw ConstructionError(
              "build_pseudo: similarity exponent |f(x_j) - f(x_k)| = " + std::to_string(expo) +
              " exceeds " + std::to_string(kSimilarityExpGuard) + " inside the matrix band");
        }
        op.matrix(j, k) = a * std::exp(expo);
      }
    }
    op.hermiticity = fv.isZero(0.0) ? Hermiticity::hermitian : Hermiticity::non_hermitian;
    op.mode = BuildMode::similarity;
    op.grid = grid;
    op.model_name = model.name;
    op.hermitian_partner = std::make_shared<const Eigen::MatrixXd>(std::move(hermitian.matrix));
    return op;
  }

  Eigen::VectorXd Vv, fp;
  try {
    Vv = sample_values(model.V[0], grid);
    fp = sample_derivatives(model.f[0], grid);
  } catch (const EvalError& e) {
    throw ConstructionError(std::string("build_pseudo: ") + e.what());
  }

  const Eigen::MatrixXd D1 = diff_matrix(grid, DiffOrder::first, scheme).matrix;
  OperatorMatrix op;
  // i(f'p + pf') with p = -i D1 is the real combination F D1 + D1 F.
  op.matrix = -diff_matrix(grid, DiffOrder::second, scheme).matrix;
  op.matrix.diagonal() += Vv;
  op.matrix += fp.asDiagonal() * D1 + D1 * fp.asDiagonal();
  op.hermiticity = fp.isZero(0.0) ? Hermiticity::hermitian : Hermiticity::non_hermitian;
  op.mode = BuildMode::continuum;
  op.grid = grid;
  op.model_name = model.name;
  return op;
}

MetricMatrix build_metric(const Grid& grid, const ModelDefinition& model) {
  require_1d(model, "build_metric");
  Eigen::VectorXd fv;
  try {
    fv = sample_values(model.f[0], grid);
  } catch (const EvalError& e) {
    throw ConstructionError(std::string("build_metric: ") + e.what());
  }

  MetricMatrix eta;
  eta.diagonal.resize(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    const double expo = 2.0 * fv[j];
    if (std::abs(expo) > kMetricExpGuard) {
      throw ConstructionError("build_metric: |2 f(x)| = " + std::to_string(std::abs(expo)) +
                              " at x = " + std::to_string(grid.points[j]) +
                              " exceeds the overflow guard; shrink the domain");
    }
    eta.diagonal[j] = std::exp(expo);
  }
  eta.log_condition = 2.0 * (fv.maxCoeff() - fv.minCoeff());
  return eta;
}

std::pair<OperatorMatrix, OperatorMatrix> build_momentum_dual(const Grid& grid_p,
                                                              const ModelDefinition& model,
                                                              Scheme scheme) {
  require_1d(model, "build_momentum_dual");
  if (model.representation != Representation::momentum) {
    throw ConfigError("build_momentum_dual: model '" + model.name +
                      "' is not in momentum representation");
  }
  // The mirrored construction reduces to the same matrix algebra on the
  // momentum grid: x^2 -> -D2 and -i(g'x + xg') -> G D1 + D1 G.
  return {build_hermitian(grid_p, model, scheme),
          build_pseudo(grid_p, model, scheme, BuildMode::continuum)};
}

std::pair<OperatorMatrix, OperatorMatrix> build_2d(const Grid& grid_x, const Grid& grid_y,
                                                   const ModelDefinition& model, Scheme scheme,
                                                   BuildMode mode) {
  model.validate();
  if (model.dimension != 2) {
    throw ConfigError("build_2d: model '" + model.name + "' is not two-dimensional");
  }

  const ModelDefinition mx = axis_model(model, 0);
  const ModelDefinition my = axis_model(model, 1);

  // Separability makes both Hamiltonians Kronecker sums of the 1D builds:
  // the diagonal V + |grad f|^2 splits per axis and the first-order block
  // i(grad f . p + p . grad f) acts axis by axis.
  OperatorMatrix hx = build_hermitian(grid_x, mx, scheme);
  OperatorMatrix hy = build_hermitian(grid_y, my, scheme);
  OperatorMatrix px = build_pseudo(grid_x, mx, scheme, mode);
  OperatorMatrix py = build_pseudo(grid_y, my, scheme, mode);

  OperatorMatrix hermitian;
  hermitian.matrix = kron_sum(hx.matrix, hy.matrix);
  hermitian.hermiticity = Hermiticity::hermitian;
  hermitian.mode = BuildMode::continuum;
  hermitian.grid = grid_x;
  hermitian.grid_y = grid_y;
  hermitian.model_name = model.name;

  OperatorMatrix pseudo;
  pseudo.matrix = kron_sum(px.matrix, py.matrix);
  pseudo.hermiticity =
      (px.hermiticity == Hermiticity::hermitian && py.hermiticity == Hermiticity::hermitian)
          ? Hermiticity::hermitian
          : Hermiticity::non_hermitian;
  pseudo.mode = mode;
  pseudo.grid = grid_x;
  pseudo.grid_y = grid_y;
  pseudo.model_name = model.name;
  if (mode == BuildMode::similarity) {
    pseudo.hermitian_partner = std::make_shared<const Eigen::MatrixXd>(hermitian.matrix);
  }
  return {std::move(hermitian), std::move(pseudo)};
}

MetricMatrix build_metric_2d(const Grid& grid_x, const Grid& grid_y,
                             const ModelDefinition& model) {
  model.validate();
  if (model.dimension != 2) {
    throw ConfigError("build_metric_2d: model '" + model.name + "' is not two-dimensional");
  }
  const MetricMatrix ex = build_metric(grid_x, axis_model(model, 0));
  const MetricMatrix ey = build_metric(grid_y, axis_model(model, 1));
  MetricMatrix eta;
  eta.diagonal.resize(grid_x.n * grid_y.n);
  for (int i = 0; i < grid_x.n; ++i) {
    for (int j = 0; j < grid_y.n; ++j) {
      eta.diagonal[i * grid_y.n + j] = ex.diagonal[i] * ey.diagonal[j];
    }
  }
  eta.log_condition = ex.log_condition + ey.log_condition;
  return eta;
}

}  // namespace phsolve
