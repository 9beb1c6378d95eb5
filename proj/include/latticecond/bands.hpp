#ifndef LATTICECOND_BANDS_HPP
#define LATTICECOND_BANDS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "latticecond/eigensolve.hpp"
#include "latticecond/hamiltonian.hpp"
#include "latticecond/model.hpp"
#include "latticecond/parallel.hpp"

namespace latticecond {

/// Allowed symmetry wavenumbers k_l = 2 pi l / L for l = -N/2 ... N/2, both
/// zone endpoints included. With drop_duplicate_edge, l = -N/2 is excluded
/// (the two edges differ by a reciprocal-lattice shift).
inline std::vector<double> k_grid(const ModelParams& p,
                                  bool drop_duplicate_edge = false) {
  const double L = p.L();
  std::vector<double> ks;
  const int l0 = drop_duplicate_edge ? -p.N / 2 + 1 : -p.N / 2;
  for (int l = l0; l <= p.N / 2; ++l) ks.push_back(2.0 * pi * l / L);
  return ks;
}

/// <p_x> over a normalized eigenvector: k + sum |c_{n,q}|^2 (2 pi j / L).
template <typename Vector>
double px_mean(double k, const Vector& coeffs, const ModelParams& p) {
  if (coeffs.size() != Eigen::Index(p.dim()))
    throw InvalidParameterError("coefficient vector length does not match D");
  double norm2 = 0.0;
  double sum = 0.0;
  const double L = p.L();
  for (Eigen::Index row = 0; row < coeffs.size(); ++row) {
    const double c2 = coeffs[row] * coeffs[row];
    norm2 += c2;
    sum += c2 * 2.0 * pi * basis_at(p, row).j / L;
  }
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10)
    throw UnnormalizedInputError("coefficient vector norm deviates from 1 by " +
                                 std::to_string(std::abs(std::sqrt(norm2) - 1.0)));
  return k + sum;
}

/// Per-band, per-k energies and momentum expectations over the k grid.
struct BandData {
  ModelParams params;
  std::vector<int> lvalues;
  std::vector<double> kvalues;
  Eigen::MatrixXd energies;  // M x K, ascending along the band index at each k
  Eigen::MatrixXd px;        // M x K
  std::vector<double> band_mean_energy;   // unweighted mean over the k grid
  std::vector<double> band_momentum_sum;  // Pi, row sum of px
  int degenerate_clusters_found = 0;      // clusters within 1e-9 seen anywhere
};

/// Diagonalizes H(k) at every grid point. k points run concurrently; tables
/// are filled into per-k slots and reduced in fixed k order afterwards.
inline BandData compute_bands(const ModelParams& p, int M, int threads = 1,
                              bool drop_duplicate_edge = false,
                              SolverPath path = SolverPath::automatic) {
  ensure_valid(p);
  if (M < 1) throw InvalidParameterError("M must be >= 1");
  BandData bd;
  bd.params = p;
  bd.kvalues = k_grid(p, drop_duplicate_edge);
  const int l0 = drop_duplicate_edge ? -p.N / 2 + 1 : -p.N / 2;
  for (int l = l0; l <= p.N / 2; ++l) bd.lvalues.push_back(l);
  const int K = int(bd.kvalues.size());
  bd.energies.resize(M, K);
  bd.px.resize(M, K);

  std::vector<int> clusters_at_k(size_t(K), 0);
  parallel_for(K, threads, [&](int ik) {
    const double k = bd.kvalues[size_t(ik)];
    HamiltonianMatrix H;
    EigenResult res;
    try {
      H = build_hamiltonian(p, k);
      res = lowest_eigenpairs(H, M, 1e-10, path);
    } catch (const SolverError& err) {
      throw SolverError("at k = " + std::to_string(k) + ": " + err.what(),
                        err.iterations, err.best_residual);
    }
    for (int b = 0; b < M; ++b) {
      bd.energies(b, ik) = res.eigenvalues[size_t(b)];
      bd.px(b, ik) = px_mean(k, res.eigenvectors.col(b), p);
    }
    // Inside a degenerate cluster the individual eigenvectors are an
    // arbitrary rotation; replace each member's px by the cluster mean so
    // consumed quantities are rotation-invariant.
    for (const auto& [lo, hi] : degenerate_clusters(res.eigenvalues)) {
      if (lo == hi) continue;
      ++clusters_at_k[size_t(ik)];
      double mean = 0.0;
      for (int b = lo; b <= hi; ++b) mean += bd.px(b, ik);
      mean /= (hi - lo + 1);
      for (int b = lo; b <= hi; ++b) bd.px(b, ik) = mean;
    }
  });

  for (int v : clusters_at_k) bd.degenerate_clusters_found += v;
  bd.band_mean_energy.resize(size_t(M));
  bd.band_momentum_sum.resize(size_t(M));
  for (int b = 0; b < M; ++b) {
    double esum = 0.0, psum = 0.0;
    for (int ik = 0; ik < K; ++ik) {  // fixed accumulation order
      esum += bd.energies(b, ik);
      psum += bd.px(b, ik);
    }
    bd.band_mean_energy[size_t(b)] = esum / K;
    bd.band_momentum_sum[size_t(b)] = psum;
  }
  return bd;
}

}  // namespace latticecond

#endif
