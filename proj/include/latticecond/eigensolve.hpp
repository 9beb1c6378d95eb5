#ifndef LATTICECOND_EIGENSOLVE_HPP
#define LATTICECOND_EIGENSOLVE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "latticecond/errors.hpp"
#include "latticecond/hamiltonian.hpp"

namespace latticecond {

/// Lowest-M eigenpairs of a real symmetric matrix. Eigenvalues ascending,
/// eigenvectors orthonormal columns, one residual norm ||Hv - eps v|| per pair.
struct EigenResult {
  double k = 0.0;
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;  // D x M
  std::vector<double> residual_norms;
};

enum class SolverPath { automatic, dense, lanczos };

namespace detail {

inline EigenResult finalize(const Eigen::MatrixXd& A, double k,
                            std::vector<double> vals, Eigen::MatrixXd vecs) {
  EigenResult r;
  r.k = k;
  r.eigenvalues = std::move(vals);
  r.eigenvectors = std::move(vecs);
  r.residual_norms.resize(r.eigenvalues.size());
  for (size_t i = 0; i < r.eigenvalues.size(); ++i)
    r.residual_norms[i] =
        (A * r.eigenvectors.col(Eigen::Index(i)) -
         r.eigenvalues[i] * r.eigenvectors.col(Eigen::Index(i))).norm();
  return r;
}

inline EigenResult dense_lowest(const Eigen::MatrixXd& A, double k, int M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success)
    throw SolverError("dense eigensolver failed", 0, std::nan(""));
  std::vector<double> vals(size_t(M), 0.0);
  for (int i = 0; i < M; ++i) vals[size_t(i)] = es.eigenvalues()(i);
  Eigen::MatrixXd vecs = es.eigenvectors().leftCols(M);
  return finalize(A, k, std::move(vals), std::move(vecs));
}

/// Lanczos with full reorthogonalization. Deterministic (fixed-seed start).
inline EigenResult lanczos_lowest(const Eigen::MatrixXd& A, double k, int M,
                                  double tol) {
  const Eigen::Index D = A.rows();
  const int max_iter = int(std::min<Eigen::Index>(D, 40 * std::int64_t(M) + 400));

  std::mt19937 rng(0x5eed1234u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(D);
  for (Eigen::Index i = 0; i < D; ++i) v(i) = dist(rng);
  v.normalize();

  Eigen::MatrixXd V(D, max_iter);
  std::vector<double> alpha, beta;  // tridiagonal coefficients
  V.col(0) = v;
  double best_resid = std::numeric_limits<double>::infinity();

  for (int m = 1; m <= max_iter; ++m) {
    Eigen::VectorXd w = A * V.col(m - 1);
    const double a = V.col(m - 1).dot(w);
    alpha.push_back(a);
    w -= a * V.col(m - 1);
    if (m > 1) w -= beta[size_t(m - 2)] * V.col(m - 2);
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass)
      w -= V.leftCols(m) * (V.leftCols(m).transpose() * w);
    const double b = w.norm();

    const bool check = (m >= M && (m % 5 == 0 || m == max_iter || b < 1e-14));
    if (check) {
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) T(i, i) = alpha[size_t(i)];
      for (int i = 0; i + 1 < m; ++i)
        T(i, i + 1) = T(i + 1, i) = beta[size_t(i)];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(T);
      const double scale = std::max(std::abs(tes.eigenvalues()(0)),
                                    std::abs(tes.eigenvalues()(m - 1)));
      double worst = 0.0;
      for (int i = 0; i < M; ++i)
        worst = std::max(worst, b * std::abs(tes.eigenvectors()(m - 1, i)));
      best_resid = std::min(best_resid, worst);
      if (worst <= tol * std::max(scale, 1.0) || b < 1e-14 || m == int(D)) {
        std::vector<double> vals(size_t(M), 0.0);
        for (int i = 0; i < M; ++i) vals[size_t(i)] = tes.eigenvalues()(i);
        Eigen::MatrixXd vecs = V.leftCols(m) * tes.eigenvectors().leftCols(M);
        // re-orthonormalize the Ritz vectors
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(vecs);
        Eigen::MatrixXd Qthin =
            qr.householderQ() * Eigen::MatrixXd::Identity(D, M);
        // keep the sign convention of the Ritz vectors
        for (int i = 0; i < M; ++i)
          if (Qthin.col(i).dot(vecs.col(i)) < 0) Qthin.col(i) *= -1.0;
        return finalize(A, k, std::move(vals), std::move(Qthin));
      }
    }
    if (m == max_iter) break;
    if (b < 1e-14) {
      // invariant subspace hit before convergence: restart direction
      Eigen::VectorXd fresh(D);
      for (Eigen::Index i = 0; i < D; ++i) fresh(i) = dist(rng);
      fresh -= V.leftCols(m) * (V.leftCols(m).transpose() * fresh);
      fresh.normalize();
      V.col(m) = fresh;
      beta.push_back(0.0);
    } else {
      V.col(m) = w / b;
      beta.push_back(b);
    }
  }
  throw SolverError("Lanczos did not converge", max_iter, best_resid);
}

}  // namespace detail

/// The M algebraically smallest eigenpairs of H. The dense full-spectrum path
/// is the default below `dense_cutoff`; above it a Lanczos path with the same
/// contract is used.
inline EigenResult lowest_eigenpairs(const HamiltonianMatrix& H, int M,
                                     double tol = 1e-10,
                                     SolverPath path = SolverPath::automatic,
                                     std::int64_t dense_cutoff = 3000) {
  if (M < 1 || M > H.dim)
    throw InvalidParameterError("M must satisfy 1 <= M <= D");
  if (!(tol > 0.0)) throw InvalidParameterError("tol must be positive");
  if (path == SolverPath::automatic)
    path = (H.dim <= dense_cutoff) ? SolverPath::dense : SolverPath::lanczos;
  if (path == SolverPath::dense) return detail::dense_lowest(H.entries, H.k, M);
  return detail::lanczos_lowest(H.entries, H.k, M, tol);
}

/// Maximal runs of eigenvalues equal within tol, as [first, last] index pairs.
/// Runs of length 1 are included; downstream code sums |c|^2-derived
/// quantities over clusters of length > 1.
inline std::vector<std::pair<int, int>> degenerate_clusters(
    const std::vector<double>& evals, double tol = 1e-9) {
  std::vector<std::pair<int, int>> out;
  int start = 0;
  for (int i = 1; i <= int(evals.size()); ++i) {
    if (i == int(evals.size()) ||
        std::abs(evals[size_t(i)] - evals[size_t(i - 1)]) > tol) {
      out.emplace_back(start, i - 1);
      start = i;
    }
  }
  return out;
}

}  // namespace latticecond

#endif
