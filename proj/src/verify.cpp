#include "phsolve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include "phsolve/errors.hpp"

namespace phsolve {

namespace {

using Complex = std::complex<double>;

constexpr double kMapExpGuard = 300.0;

CheckResult skipped_result(const std::string& id, const std::string& reason) {
  CheckResult r;
  r.check_id = id;
  r.skipped = true;
  r.skip_reason = reason;
  return r;
}

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

double probe_residual(const Eigen::MatrixXd& H, const Eigen::VectorXd& eta, const Grid& grid,
                      int probes, double sigma) {
  const Eigen::MatrixXd lhs = H * eta.asDiagonal();                 // H eta
  const Eigen::MatrixXd rhs = eta.asDiagonal() * H.transpose();    // eta H^T
  const Eigen::MatrixXd defect = lhs - rhs;

  const double span = grid.length();
  double worst = 0.0;
  for (int i = 0; i < probes; ++i) {
    const double center = grid.x_min + span * (0.25 + 0.5 * (i + 1) / (probes + 1.0));
    Eigen::VectorXd v(grid.n);
    for (int j = 0; j < grid.n; ++j) {
      const double u = (grid.points[j] - center) / sigma;
      v[j] = std::exp(-0.5 * u * u);
    }
    v /= v.norm();
    const double denom = (lhs * v).norm();
    if (denom == 0.0) continue;
    worst = std::max(worst, (defect * v).norm() / denom);
  }
  return worst;
}

}  // namespace

CheckResult check_operator_identity(const Grid& grid, const ModelDefinition& model, Scheme scheme,
                                    double tol) {
  model.validate();
  if (model.dimension != 1) {
    throw ConfigError("check_operator_identity: model '" + model.name + "' is not 1D");
  }

  const Eigen::MatrixXd D1 = diff_matrix(grid, DiffOrder::first, scheme).matrix;
  const Eigen::VectorXd fp = sample_derivatives(model.f[0], grid);

  const Eigen::MatrixXcd P = Complex(0, -1) * D1.cast<Complex>();
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(grid.n, grid.n);
  F.diagonal() = fp.cast<Complex>();

  const Eigen::MatrixXcd A = P + Complex(0, 1) * F;
  const Eigen::MatrixXcd L = A * A;
  const Eigen::MatrixXcd R = P * P - F * F + Complex(0, 1) * (F * P + P * F);

  CheckResult c;
  c.check_id = "operator_identity";
  c.tolerance = tol;
  const double rnorm = R.norm();
  c.residual = rnorm == 0.0 ? (L - R).norm() : (L - R).norm() / rnorm;
  c.passed = c.residual <= c.tolerance;
  c.details["n"] = grid.n;
  c.details["scheme"] = scheme == Scheme::central2 ? 2 : 4;
  return c;
}

CheckResult check_pseudo_hermiticity(const OperatorMatrix& H, const MetricMatrix& eta,
                                     double tol) {
  CheckResult c;
  c.check_id = "pseudo_hermiticity_similarity";
  c.tolerance = tol;
  c.details["log_condition"] = eta.log_condition;

  if (eta.log_condition > 60.0) {
    c.skipped = true;
    c.skip_reason = "metric log_condition " + std::to_string(eta.log_condition) +
                    " > 60; residual not meaningful in double precision";
    return c;
  }
  if (eta.diagonal.size() != H.matrix.rows()) {
    throw ConfigError("check_pseudo_hermiticity: metric/operator dimension mismatch");
  }

  const Eigen::MatrixXd lhs = H.matrix * eta.diagonal.asDiagonal();
  const Eigen::MatrixXd rhs = eta.diagonal.asDiagonal() * H.matrix.transpose();
  c.residual = (lhs - rhs).norm() / lhs.norm();
  c.passed = c.residual <= c.tolerance;
  return c;
}

CheckResult check_pseudo_hermiticity_order(const Grid& base_grid, const ModelDefinition& model,
                                           Scheme scheme, int probes, int levels,
                                           double min_order) {
  if (levels < 2) throw ConfigError("check_pseudo_hermiticity_order: need >= 2 levels");
  if (model.dimension != 1) {
    throw ConfigError("check_pseudo_hermiticity_order: model '" + model.name + "' is not 1D");
  }

  const double sigma = 10.0 * base_grid.h;  // fixed probe functions across levels

  CheckResult c;
  c.check_id = "pseudo_hermiticity_continuum";
  c.tolerance = 0.0;

  std::vector<double> log_h, log_r;
  double r_max = 0.0;
  Grid g = base_grid;
  for (int level = 0; level < levels; ++level) {
    const OperatorMatrix H = build_pseudo(g, model, scheme, BuildMode::continuum);
    const MetricMatrix eta = build_metric(g, model);
    const double r = probe_residual(H.matrix, eta.diagonal, g, probes, sigma);
    c.details["residual_level_" + std::to_string(level)] = r;
    c.details["h_level_" + std::to_string(level)] = g.h;
    log_h.push_back(std::log(g.h));
    log_r.push_back(std::log(std::max(r, 1e-300)));
    r_max = std::max(r_max, r);
    if (level + 1 < levels) g = refine_grid(g);
  }

  if (r_max <= 1e-14) {
    // Defect already at the rounding floor (trivial gauge): nothing left to
    // converge, the identity holds outright.
    c.details["defect_below_floor"] = 1.0;
    c.details["min_order"] = min_order;
    c.residual = -min_order;
    c.passed = true;
    return c;
  }

  const double order = fit_slope(log_h, log_r);
  c.details["observed_order"] = order;
  c.details["min_order"] = min_order;
  c.residual = min_order - order;  // order shortfall; <= 0 means converged fast enough
  c.passed = c.residual <= c.tolerance;
  return c;
}

CheckResult check_isospectral(const ModelDefinition& model, const Grid& grid_x,
                              const std::optional<Grid>& grid_y, BuildMode mode, Scheme scheme,
                              int k, IsospectralTolerance tol) {
  OperatorMatrix hermitian, pseudo;
  if (model.dimension == 2) {
    if (!grid_y) throw ConfigError("check_isospectral: 2D model requires grid_y");
    auto pair = build_2d(grid_x, *grid_y, model, scheme, mode);
    hermitian = std::move(pair.first);
    pseudo = std::move(pair.second);
  } else {
    hermitian = build_hermitian(grid_x, model, scheme);
    pseudo = build_pseudo(grid_x, model, scheme, mode);
  }

  double tol_re = tol.tol_re;
  double tol_im = tol.tol_im;
  const double partner_norm = hermitian.matrix.norm();
  if (tol.relative_to_partner_norm) {
    tol_re *= partner_norm;
    tol_im *= partner_norm;
  }

  const SpectrumResult sh = eigen_hermitian(hermitian, false);
  const SpectrumResult sp = eigen_general(pseudo, false);
  const MatchReport match = match_spectra(sp, sh, k, tol_re, tol_im);

  CheckResult c;
  c.check_id = mode == BuildMode::similarity ? "isospectral_similarity" : "isospectral_continuum";
  c.tolerance = tol_re;
  // fold the imaginary part in so that residual <= tol_re reproduces the
  // two-sided (tol_re, tol_im) test
  const double im_scaled = tol_im > 0.0
                               ? match.max_abs_im * (tol_re / tol_im)
                               : (match.max_abs_im > 0.0 ? std::numeric_limits<double>::infinity()
                                                         : 0.0);
  c.residual = std::max(match.max_abs_re_diff, im_scaled);
  c.passed = c.residual <= c.tolerance;
  c.details["max_abs_re_diff"] = match.max_abs_re_diff;
  c.details["max_abs_im"] = match.max_abs_im;
  c.details["tol_im"] = tol_im;
  c.details["k"] = k;
  c.details["partner_frobenius"] = partner_norm;
  return c;
}

MappedState map_eigenfunction(const Eigen::VectorXd& psi, const FunctionSpec& f,
                              const Grid& grid) {
  if (psi.size() != grid.n) throw ConfigError("map_eigenfunction: vector/grid size mismatch");
  MappedState m;
  m.phi.resize(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    const double fj = f.eval(grid.points[j]);
    if (fj > kMapExpGuard) {
      throw ConstructionError("map_eigenfunction: f(x) = " + std::to_string(fj) + " at x = " +
                              std::to_string(grid.points[j]) + " exceeds the overflow guard");
    }
    m.phi[j] = std::exp(fj) * psi[j];
  }
  m.prenorm = std::sqrt(m.phi.squaredNorm() * grid.h);
  if (!(m.prenorm > 0.0) || !std::isfinite(m.prenorm)) {
    throw ConstructionError("map_eigenfunction: mapped state has no finite norm");
  }
  m.phi /= m.prenorm;
  return m;
}

CheckResult check_normalizability(const Eigen::VectorXd& phi, const Grid& grid, double tail_tol,
                                  const std::string& check_id) {
  const int n = grid.n;
  if (phi.size() != n) throw ConfigError("check_normalizability: vector/grid size mismatch");

  CheckResult c;
  c.check_id = check_id;
  c.tolerance = tail_tol;

  const int n_tail = std::max(1, n / 20);  // 5% of points per side
  const Eigen::VectorXd density = phi.array().square();
  const double total = density.sum();
  const double tail = density.head(n_tail).sum() + density.tail(n_tail).sum();
  c.residual = tail / total;

  // Decay-slope fits over the outer 20% on each side; the segment must decay
  // away from the center (positive slope on the left, negative on the right).
  // Entries below the underflow floor are excluded; a side with fewer than 3
  // usable points has already decayed past representability.
  const int n_fit = std::max(3, n / 5);
  auto side_slope = [&](int begin, int end) -> std::optional<double> {
    std::vector<double> xs, ys;
    for (int j = begin; j < end; ++j) {
      const double a = std::abs(phi[j]);
      if (a > 1e-290) {
        xs.push_back(grid.points[j]);
        ys.push_back(std::log(a));
      }
    }
    if (xs.size() < 3) return std::nullopt;
    return fit_slope(xs, ys);
  };

  const auto left = side_slope(0, n_fit);
  const auto right = side_slope(n - n_fit, n);
  const bool left_ok = !left || *left > 0.0;
  const bool right_ok = !right || *right < 0.0;

  c.details["tail_mass"] = c.residual;
  c.details["n_tail"] = n_tail;
  if (left) c.details["slope_left"] = *left;
  if (right) c.details["slope_right"] = *right;
  c.details["slopes_decay"] = (left_ok && right_ok) ? 1.0 : 0.0;

  c.passed = c.residual <= c.tolerance && left_ok && right_ok;
  return c;
}

namespace {

bool filter_allows(const std::vector<std::string>& filter, const std::string& check_id) {
  if (filter.empty()) return true;
  for (const auto& f : filter) {
    if (f == "all" || check_id == f || check_id.rfind(f + "_", 0) == 0) return true;
  }
  return false;
}

}  // namespace

VerificationReport run_all(const ModelDefinition& model, const Grid& grid_x,
                           const std::optional<Grid>& grid_y, const VerifySettings& settings) {
  model.validate();
  if (model.dimension == 2 && !grid_y) throw ConfigError("run_all: 2D model requires grid_y");

  VerificationReport report;
  report.model = model.name;
  {
    std::string g = "[" + std::to_string(grid_x.x_min) + ", " + std::to_string(grid_x.x_max) +
                    "] n=" + std::to_string(grid_x.n);
    if (grid_y) {
      g += " x [" + std::to_string(grid_y->x_min) + ", " + std::to_string(grid_y->x_max) +
           "] n=" + std::to_string(grid_y->n);
    }
    report.grid_summary = g;
  }
  const bool continuum = std::find(settings.modes.begin(), settings.modes.end(),
                                   BuildMode::continuum) != settings.modes.end();
  const bool similarity = std::find(settings.modes.begin(), settings.modes.end(),
                                    BuildMode::similarity) != settings.modes.end();
  report.mode = continuum && similarity ? "both" : (continuum ? "continuum" : "similarity");

  auto guarded = [&](const std::string& id, const std::function<CheckResult()>& fn) {
    if (!filter_allows(settings.check_filter, id)) return;
    try {
      report.checks.push_back(fn());
    } catch (const Error& e) {
      report.checks.push_back(skipped_result(id, e.what()));
    }
  };

  if (model.dimension == 1) {
    guarded("operator_identity", [&] {
      return check_operator_identity(grid_x, model, settings.scheme,
                                     settings.tol_operator_identity);
    });
  }

  if (similarity) {
    guarded("isospectral_similarity", [&] {
      return check_isospectral(model, grid_x, grid_y, BuildMode::similarity, settings.scheme,
                               settings.k_similarity.value_or(settings.k_levels),
                               settings.iso_similarity);
    });
    guarded("pseudo_hermiticity_similarity", [&] {
      if (model.dimension == 2) {
        auto pair = build_2d(grid_x, *grid_y, model, settings.scheme, BuildMode::similarity);
        const MetricMatrix eta = build_metric_2d(grid_x, *grid_y, model);
        return check_pseudo_hermiticity(pair.second, eta, settings.tol_pseudo_similarity);
      }
      const OperatorMatrix H = build_pseudo(grid_x, model, settings.scheme, BuildMode::similarity);
      const MetricMatrix eta = build_metric(grid_x, model);
      return check_pseudo_hermiticity(H, eta, settings.tol_pseudo_similarity);
    });
  }

  if (continuum) {
    guarded("isospectral_continuum", [&] {
      return check_isospectral(model, grid_x, grid_y, BuildMode::continuum, settings.scheme,
                               settings.k_continuum.value_or(settings.k_levels),
                               settings.iso_continuum);
    });
    if (model.dimension == 1) {
      guarded("pseudo_hermiticity_continuum", [&] {
        const int base_n = std::min(grid_x.n, settings.order_base_n);
        const Grid base = make_grid(grid_x.x_min, grid_x.x_max, base_n);
        return check_pseudo_hermiticity_order(base, model, settings.scheme, settings.probes, 3,
                                              settings.min_order_pseudo_continuum);
      });
    }
  }

  if (model.dimension == 1 && !settings.normalizability_levels.empty()) {
    const Grid ngrid = settings.normalizability_grid.value_or(grid_x);
    const TailMethod method = settings.tail_method == TailMethod::automatic
                                  ? (model.numerov_tail ? TailMethod::numerov
                                                        : TailMethod::eigenvector)
                                  : settings.tail_method;

    // One spectral solve shared by all requested levels.
    std::optional<SpectrumResult> spectrum;
    std::optional<Eigen::VectorXd> W;
    try {
      const OperatorMatrix hh = build_hermitian(ngrid, model, settings.scheme);
      spectrum = eigen_hermitian(hh, method == TailMethod::eigenvector);
      if (method == TailMethod::numerov) {
        W = sample_values(model.V[0], ngrid).array() +
            sample_derivatives(model.f[0], ngrid).array().square();
      }
    } catch (const Error& e) {
      for (int level : settings.normalizability_levels) {
        const std::string id = "normalizability_level_" + std::to_string(level);
        if (filter_allows(settings.check_filter, id)) {
          report.checks.push_back(skipped_result(id, e.what()));
        }
      }
      spectrum.reset();
    }

    if (spectrum) {
      for (int level : settings.normalizability_levels) {
        const std::string id = "normalizability_level_" + std::to_string(level);
        guarded(id, [&]() -> CheckResult {
          if (level < 0 || level >= spectrum->eigenvalues.size()) {
            throw ConfigError("normalizability level " + std::to_string(level) +
                              " out of range");
          }
          Eigen::VectorXd psi;
          if (method == TailMethod::numerov) {
            psi = shooting_eigenfunction(ngrid, *W, spectrum->eigenvalues[level].real());
          } else {
            psi = spectrum->eigenvectors->col(level).real();
          }
          const MappedState mapped = map_eigenfunction(psi, model.f[0], ngrid);
          CheckResult c = check_normalizability(mapped.phi, ngrid, settings.tail_tol, id);
          c.details["energy"] = spectrum->eigenvalues[level].real();
          c.details["map_prenorm"] = mapped.prenorm;
          c.details["tail_method"] = method == TailMethod::numerov ? 1.0 : 0.0;
          return c;
        });
      }
    }
  }

  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.check_id < b.check_id; });

  int ran = 0;
  report.overall = true;
  for (const auto& c : report.checks) {
    if (c.skipped) continue;
    ++ran;
    report.overall = report.overall && c.passed;
  }
  if (ran == 0) {
    throw ConfigError("run_all: no checks ran for model '" + model.name +
                      "' (all filtered out or skipped)");
  }
  return report;
}

}  // namespace phsolve
