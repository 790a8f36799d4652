#include "phsolve/spectra.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#include "phsolve/errors.hpp"

namespace phsolve {

namespace {

using Complex = std::complex<double>;

void sort_pairs(Eigen::VectorXcd& values, Eigen::MatrixXcd* vectors) {
  const auto n = values.size();
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  std::stable_sort(perm.begin(), perm.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (values[a].real() != values[b].real()) return values[a].real() < values[b].real();
    return values[a].imag() < values[b].imag();
  });
  Eigen::VectorXcd sorted_values(n);
  for (Eigen::Index i = 0; i < n; ++i) sorted_values[i] = values[perm[i]];
  values = std::move(sorted_values);
  if (vectors) {
    Eigen::MatrixXcd sorted_vectors(vectors->rows(), n);
    for (Eigen::Index i = 0; i < n; ++i) sorted_vectors.col(i) = vectors->col(perm[i]);
    *vectors = std::move(sorted_vectors);
  }
}

void grid_normalize(Eigen::MatrixXcd& vectors, double measure) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    const double nrm = std::sqrt(vectors.col(k).squaredNorm() * measure);
    if (nrm > 0.0) vectors.col(k) /= nrm;
  }
}

double max_relative_residual(const Eigen::MatrixXd& M, const Eigen::VectorXcd& values,
                             const Eigen::MatrixXcd& vectors) {
  const Eigen::MatrixXd Vr = vectors.real();
  const Eigen::MatrixXd Vi = vectors.imag();
  Eigen::MatrixXcd R = (M * Vr).cast<Complex>() + Complex(0, 1) * ((M * Vi).cast<Complex>());
  R -= vectors * values.asDiagonal();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    worst = std::max(worst, R.col(k).norm() / vectors.col(k).norm());
  }
  return worst;
}

}  // namespace

SpectrumResult eigen_hermitian(const OperatorMatrix& M, bool vectors) {
  if (M.hermiticity != Hermiticity::hermitian) {
    throw ConfigError("eigen_hermitian requires a Hermitian operator (model '" + M.model_name +
                      "')");
  }
  const auto n = static_cast<lapack_int>(M.matrix.rows());
  Eigen::MatrixXd A = M.matrix;  // dsyevd overwrites with eigenvectors
  Eigen::VectorXd w(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'L', n, A.data(), n, w.data());
  if (info != 0) {
    throw SolverError("dsyevd failed (info = " + std::to_string(info) + ", n = " +
                      std::to_string(n) + ", ||M||_F = " + std::to_string(M.matrix.norm()) + ")");
  }

  SpectrumResult r;
  r.solver = SolverKind::symmetric;
  r.eigenvalues = w.cast<Complex>();  // dsyevd returns ascending order
  if (vectors) {
    Eigen::MatrixXcd V = A.cast<Complex>();
    grid_normalize(V, M.cell_measure());
    r.residual_max = max_relative_residual(M.matrix, r.eigenvalues, V);
    r.eigenvectors = std::move(V);
  }
  return r;
}

SpectrumResult eigen_general(const OperatorMatrix& M, bool vectors) {
  const auto n = static_cast<lapack_int>(M.matrix.rows());
  Eigen::MatrixXd A = M.matrix;
  Eigen::VectorXd wr(n), wi(n);
  Eigen::MatrixXd vr;
  if (vectors) vr.resize(n, n);
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', vectors ? 'V' : 'N', n, A.data(), n, wr.data(),
                    wi.data(), nullptr, 1, vectors ? vr.data() : nullptr, n);
  if (info != 0) {
    throw SolverError("dgeev failed (info = " + std::to_string(info) + ", n = " +
                      std::to_string(n) + ", ||M||_F = " + std::to_string(M.matrix.norm()) + ")");
  }

  SpectrumResult r;
  r.solver = SolverKind::general;
  r.eigenvalues.resize(n);
  for (lapack_int j = 0; j < n; ++j) r.eigenvalues[j] = Complex(wr[j], wi[j]);

  if (vectors) {
    // dgeev packs conjugate pairs as (real column, imaginary column).
    Eigen::MatrixXcd V(n, n);
    for (lapack_int j = 0; j < n; ++j) {
      if (wi[j] > 0.0 && j + 1 < n) {
        V.col(j) = vr.col(j).cast<Complex>() + Complex(0, 1) * vr.col(j + 1).cast<Complex>();
        V.col(j + 1) = vr.col(j).cast<Complex>() - Complex(0, 1) * vr.col(j + 1).cast<Complex>();
        ++j;
      } else {
        V.col(j) = vr.col(j).cast<Complex>();
      }
    }
    sort_pairs(r.eigenvalues, &V);
    grid_normalize(V, M.cell_measure());
    r.residual_max = max_relative_residual(M.matrix, r.eigenvalues, V);
    r.eigenvectors = std::move(V);
  } else {
    sort_pairs(r.eigenvalues, nullptr);
  }
  return r;
}

MatchReport match_spectra(const SpectrumResult& a, const SpectrumResult& b, int k, double tol_re,
                          double tol_im) {
  if (k < 1) throw ConfigError("match_spectra: k must be >= 1");
  if (a.eigenvalues.size() < k || b.eigenvalues.size() < k) {
    throw ConfigError("match_spectra: need at least k = " + std::to_string(k) +
                      " eigenvalues in both spectra");
  }

  MatchReport rep;
  rep.k_matched = k;
  rep.tol_re = tol_re;
  rep.tol_im = tol_im;

  std::vector<bool> used(k, false);
  for (int i = 0; i < k; ++i) {
    int best = -1;
    double best_diff = 0.0;
    for (int j = 0; j < k; ++j) {
      if (used[j]) continue;
      const double diff = std::abs(a.eigenvalues[i].real() - b.eigenvalues[j].real());
      if (best < 0 || diff < best_diff) {
        best = j;
        best_diff = diff;
      }
    }
    used[best] = true;
    MatchedPair p;
    p.index_a = i;
    p.index_b = best;
    p.abs_re_diff = best_diff;
    p.abs_im_a = std::abs(a.eigenvalues[i].imag());
    rep.pairs.push_back(p);
    rep.max_abs_re_diff = std::max(rep.max_abs_re_diff, p.abs_re_diff);
    rep.max_abs_im = std::max(rep.max_abs_im, p.abs_im_a);
  }
  rep.passed = rep.max_abs_re_diff <= tol_re && rep.max_abs_im <= tol_im;
  return rep;
}

std::optional<double> morse_analytic(double D, double alpha, int n_level) {
  if (!(D > 0.0) || !(alpha > 0.0)) throw ConfigError("morse_analytic requires D > 0, alpha > 0");
  if (n_level < 0) throw ConfigError("morse_analytic requires n_level >= 0");
  const double nu = n_level + 0.5;
  // Ladder terminates where E_n stops increasing, i.e. nu < sqrt(D)/alpha;
  // equivalently E_n = D - (sqrt(D) - alpha nu)^2 with a positive remainder.
  if (!(nu < std::sqrt(D) / alpha)) return std::nullopt;
  return 2.0 * alpha * std::sqrt(D) * nu - alpha * alpha * nu * nu;
}

Eigen::VectorXd shooting_eigenfunction(const Grid& grid, const Eigen::VectorXd& W, double E) {
  const int n = grid.n;
  if (W.size() != n) throw ConfigError("shooting_eigenfunction: W size mismatch");
  const double h = grid.h;
  const double h2_12 = h * h / 12.0;

  // g = W - E; Numerov weights (1 - h^2 g / 12).
  Eigen::VectorXd g = W.array() - E;
  auto weight = [&](int j) { return 1.0 - h2_12 * g[j]; };

  // Matching index: outermost grid point of the classically allowed region.
  int match = -1;
  for (int j = n - 1; j >= 0; --j) {
    if (g[j] <= 0.0) {
      match = j;
      break;
    }
  }
  if (match <= 0 || match >= n - 1) match = n / 2;

  const double tiny = 1e-280;
  const double huge = 1e250;

  // March rightward from the left Dirichlet end up to `match`; the boundary
  // value u(x_min) = 0 sits one step before the first grid point.
  Eigen::VectorXd uL = Eigen::VectorXd::Zero(n);
  uL[0] = tiny;
  if (n > 1) uL[1] = 2.0 * tiny * (1.0 + 5.0 * h2_12 * g[0]) / weight(1);
  for (int j = 1; j < match; ++j) {
    uL[j + 1] = (2.0 * uL[j] * (1.0 + 5.0 * h2_12 * g[j]) - uL[j - 1] * weight(j - 1)) / weight(j + 1);
    if (std::abs(uL[j + 1]) > huge) uL.head(j + 2) /= std::abs(uL[j + 1]);
  }

  // March leftward from the right Dirichlet end down to `match`.
  Eigen::VectorXd uR = Eigen::VectorXd::Zero(n);
  uR[n - 1] = tiny;
  if (n > 1) uR[n - 2] = 2.0 * tiny * (1.0 + 5.0 * h2_12 * g[n - 1]) / weight(n - 2);
  for (int j = n - 2; j > match; --j) {
    uR[j - 1] = (2.0 * uR[j] * (1.0 + 5.0 * h2_12 * g[j]) - uR[j + 1] * weight(j + 1)) / weight(j - 1);
    if (std::abs(uR[j - 1]) > huge) uR.tail(n - j + 1) /= std::abs(uR[j - 1]);
  }

  if (uR[match] == 0.0 || uL[match] == 0.0) {
    throw SolverError("shooting_eigenfunction: zero amplitude at the matching point");
  }

  Eigen::VectorXd u(n);
  u.head(match + 1) = uL.head(match + 1) / uL[match];
  u.tail(n - match) = uR.tail(n - match) / uR[match];

  const double nrm = std::sqrt(u.squaredNorm() * h);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw SolverError("shooting_eigenfunction: normalization failed");
  }
  return u / nrm;
}

}  // namespace phsolve
