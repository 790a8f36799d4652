#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phsolve/operators.hpp"
#include "phsolve/spectra.hpp"

namespace phsolve {

struct CheckResult {
  std::string check_id;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool skipped = false;       // a check that errored is skipped-with-reason, not failed
  std::string skip_reason;
  std::map<std::string, double> details;
};

struct VerificationReport {
  std::string model;
  std::string grid_summary;
  std::string mode;
  std::vector<CheckResult> checks;  // sorted by check_id
  bool overall = false;             // AND of non-skipped checks
};

/// Matrix form of (p + if')^2 = p^2 - f'^2 + i(f'p + pf') with P = -i D1.
/// P^2 is (-i D1)^2 here, not -D2, so the identity is exact matrix algebra;
/// residual = ||L - R||_F / ||R||_F.
CheckResult check_operator_identity(const Grid& grid, const ModelDefinition& model, Scheme scheme,
                                    double tol = 1e-13);

/// Discrete form of H^dagger = eta^{-1} H eta, checked as the vanishing of
/// H eta - eta H^dagger (with eta = e^{2f}, H eta is Hermitian for the
/// similarity-built H). Relative Frobenius residual; the check is skipped
/// when eta.log_condition > 60.
CheckResult check_pseudo_hermiticity(const OperatorMatrix& H, const MetricMatrix& eta,
                                     double tol = 1e-10);

/// Continuum-mode pseudo-Hermiticity through localized Gaussian probes:
/// r = max over probes of ||(H eta - eta H^dagger) v|| / ||H eta v||,
/// evaluated on `levels` grids with h halving. Probe centers are spread over
/// the middle half of the domain; the width 10 h_base is fixed at the base
/// level so the probes are the same functions on every grid. residual is the
/// order shortfall min_order - observed_order against tolerance 0.
CheckResult check_pseudo_hermiticity_order(const Grid& base_grid, const ModelDefinition& model,
                                           Scheme scheme, int probes = 5, int levels = 3,
                                           double min_order = 1.9);

struct IsospectralTolerance {
  double tol_re = 1e-2;
  double tol_im = 1e-6;
  /// When set, both tolerances are scaled by ||H_H||_F of the built partner.
  bool relative_to_partner_norm = false;
};

/// Diagonalizes the pair (H_H, H) for the model and matches the k lowest
/// levels. residual folds the imaginary part in as
/// max(|dRe|, |Im| tol_re/tol_im) so that residual <= tol_re reproduces the
/// two-sided test; the raw maxima are in details.
CheckResult check_isospectral(const ModelDefinition& model, const Grid& grid_x,
                              const std::optional<Grid>& grid_y, BuildMode mode, Scheme scheme,
                              int k, IsospectralTolerance tol);

struct MappedState {
  Eigen::VectorXd phi;   // e^{f(x_j)} psi_j, grid-renormalized
  double prenorm = 0.0;  // norm before renormalization
};

/// psi must be grid-normalized; entries with f(x_j) > 300 trip the overflow
/// guard.
MappedState map_eigenfunction(const Eigen::VectorXd& psi, const FunctionSpec& f, const Grid& grid);

/// Square-integrability diagnostics for a mapped state: (a) tail mass, the
/// fraction of |phi|^2 h carried by the outer 10% of grid points (5% per
/// side), passing at <= tail_tol; (b) log-linear fits of log|phi| over the
/// outer 20% on each side must decay away from the center. residual is the
/// tail mass; slopes are reported in details.
CheckResult check_normalizability(const Eigen::VectorXd& phi, const Grid& grid,
                                  double tail_tol = 1e-3,
                                  const std::string& check_id = "normalizability");

enum class TailMethod { eigenvector, numerov, automatic };

struct VerifySettings {
  Scheme scheme = Scheme::central2;
  std::vector<BuildMode> modes = {BuildMode::continuum, BuildMode::similarity};
  int k_levels = 8;
  std::optional<int> k_continuum;   // override for the continuum match
  std::optional<int> k_similarity;  // override for the similarity match

  double tol_operator_identity = 1e-13;
  double tol_pseudo_similarity = 1e-10;
  double min_order_pseudo_continuum = 1.9;
  IsospectralTolerance iso_similarity{1e-8, 1e-8, true};
  IsospectralTolerance iso_continuum{1e-2, 1e-6, false};

  std::vector<int> normalizability_levels;  // empty: check not run
  double tail_tol = 1e-3;
  TailMethod tail_method = TailMethod::automatic;
  std::optional<Grid> normalizability_grid;  // defaults to the run grid

  int probes = 5;
  int order_base_n = 300;  // base grid size for the h-halving study

  /// Empty: run everything applicable. Entries are check ids or family
  /// prefixes ("isospectral" selects both modes' variants).
  std::vector<std::string> check_filter;
};

/// Runs every applicable check for the model and aggregates the results.
/// Individual check errors become skipped-with-reason entries; an empty
/// report (nothing ran) is a ConfigError.
VerificationReport run_all(const ModelDefinition& model, const Grid& grid_x,
                           const std::optional<Grid>& grid_y, const VerifySettings& settings);

}  // namespace phsolve
