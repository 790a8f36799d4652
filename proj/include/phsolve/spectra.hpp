#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "phsolve/operators.hpp"

namespace phsolve {

enum class SolverKind { symmetric, general };

struct SpectrumResult {
  /// Sorted ascending by real part (then imaginary part).
  Eigen::VectorXcd eigenvalues;
  /// Columns grid-normalized: sum |v_j|^2 * cell_measure = 1. Present only
  /// when requested.
  std::optional<Eigen::MatrixXcd> eigenvectors;
  SolverKind solver = SolverKind::symmetric;
  /// max_k ||M v_k - lambda_k v_k||_2 / ||v_k||_2; present with eigenvectors.
  std::optional<double> residual_max;
};

/// Dense symmetric solve (LAPACK dsyevd). Requires M.hermiticity == hermitian.
SpectrumResult eigen_hermitian(const OperatorMatrix& M, bool vectors = true);

/// Dense general solve (LAPACK dgeev). Complex eigenvalues of the real input
/// appear in conjugate pairs.
SpectrumResult eigen_general(const OperatorMatrix& M, bool vectors = false);

struct MatchedPair {
  int index_a = 0;        // level in `a` (the spectrum under test)
  int index_b = 0;        // level in `b` (the reference spectrum)
  double abs_re_diff = 0.0;
  double abs_im_a = 0.0;  // |Im| of the tested eigenvalue
};

struct MatchReport {
  std::vector<MatchedPair> pairs;  // ordered by index_a ascending
  int k_matched = 0;
  double max_abs_re_diff = 0.0;
  double max_abs_im = 0.0;
  double tol_re = 0.0;
  double tol_im = 0.0;
  bool passed = false;
};

/// One-to-one greedy nearest-real-part pairing of the k lowest states of each
/// spectrum (`a` is the spectrum under test, e.g. the pseudo-Hermitian one;
/// `b` the reference). Ties break toward the lower index. Failure to meet the
/// tolerances is a reported state, not an exception.
MatchReport match_spectra(const SpectrumResult& a, const SpectrumResult& b, int k, double tol_re,
                          double tol_im);

/// Bound-state energies of p^2 + D(1 - e^{-alpha x})^2:
/// E_n = 2 alpha sqrt(D) (n + 1/2) - alpha^2 (n + 1/2)^2, defined while
/// n + 1/2 < sqrt(D)/alpha; nullopt when the level does not exist.
std::optional<double> morse_analytic(double D, double alpha, int n_level);

/// Reconstructs the eigenfunction of -u'' + W u = E u on the grid by Numerov
/// integration inward from both Dirichlet ends, matched at the outermost
/// classical turning point. Unlike dense-eigensolver vectors, whose tail
/// entries bottom out at the solver noise floor (~eps * ||H||), the inward
/// marches are stable for the decaying solution, so the returned vector has
/// machine-relative accuracy down to the underflow threshold. Grid-normalized.
Eigen::VectorXd shooting_eigenfunction(const Grid& grid, const Eigen::VectorXd& W, double E);

}  // namespace phsolve
