#ifndef LATTICECOND_VERIFY_HPP
#define LATTICECOND_VERIFY_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "latticecond/bands.hpp"
#include "latticecond/eigensolve.hpp"
#include "latticecond/hamiltonian.hpp"
#include "latticecond/model.hpp"
#include "latticecond/oracle.hpp"

namespace latticecond {

enum class VerifyLevel { quick, full };

struct VerificationEntry {
  std::string suite;
  std::string property;
  double deviation;
  double tolerance;
  bool pass;
};

struct VerificationReport {
  std::vector<VerificationEntry> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

namespace detail {

inline void add(VerificationReport& rep, std::string suite, std::string prop,
                double dev, double tol) {
  rep.entries.push_back({std::move(suite), std::move(prop), dev, tol, dev <= tol});
}

/// Hellmann-Feynman check at a generic field point: centered finite
/// difference of the eigenvalues in E against -e sum |c|^2 2 pi q/(lambda L).
/// Degenerate clusters are summed on both sides before comparison. Returns
/// the max deviation relative to the largest analytic derivative magnitude.
inline double hellmann_feynman_max_dev(const ModelParams& base, int M,
                                       double E0, double dE) {
  ModelParams p = base;
  std::vector<double> fd_all, hf_all;
  for (double k : k_grid(base)) {
    p.Efield = E0;
    const EigenResult mid = lowest_eigenpairs(build_hamiltonian(p, k), M);
    p.Efield = E0 + dE;
    const EigenResult hi = lowest_eigenpairs(build_hamiltonian(p, k), M);
    p.Efield = E0 - dE;
    const EigenResult lo = lowest_eigenpairs(build_hamiltonian(p, k), M);
    const double L = p.L();
    std::vector<double> hf(size_t(M), 0.0);
    for (int b = 0; b < M; ++b) {
      double s = 0.0;
      for (Eigen::Index row = 0; row < Eigen::Index(p.dim()); ++row) {
        const double c = mid.eigenvectors(row, b);
        s += c * c * 2.0 * pi * basis_at(p, row).q / (p.lambda * L);
      }
      hf[size_t(b)] = -p.e * s;
    }
    for (const auto& [first, last] : degenerate_clusters(mid.eigenvalues)) {
      double fd_sum = 0.0, hf_sum = 0.0;
      for (int b = first; b <= last; ++b) {
        fd_sum += (hi.eigenvalues[size_t(b)] - lo.eigenvalues[size_t(b)]) / (2.0 * dE);
        hf_sum += hf[size_t(b)];
      }
      fd_all.push_back(fd_sum);
      hf_all.push_back(hf_sum);
    }
  }
  double scale = 0.0;
  for (double v : hf_all) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, 1e-12);
  double worst = 0.0;
  for (size_t i = 0; i < fd_all.size(); ++i)
    worst = std::max(worst, std::abs(fd_all[i] - hf_all[i]) / scale);
  return worst;
}

}  // namespace detail

/// Cross-cutting verification suites: matrix symmetry, oracle equivalence
/// (quick level only), field linearity, k <-> -k spectral reflection,
/// momentum antisymmetry, Hellmann-Feynman, and the Pi(E=0) residual.
inline VerificationReport run_verification(const ModelParams& params,
                                           VerifyLevel level) {
  ensure_valid(params);
  if (level == VerifyLevel::quick && params.dim() > 1000)
    throw InvalidParameterError("quick verification requires D <= 1000");
  VerificationReport rep;
  const double L = params.L();
  const int M = int(std::min<std::int64_t>(6, params.dim()));

  // --- matrix symmetry, exact by construction
  {
    double worst = 0.0;
    for (double k : {0.0, 2.0 * pi / L}) {
      const HamiltonianMatrix H = build_hamiltonian(params, k);
      worst = std::max(worst,
                       (H.entries - H.entries.transpose()).cwiseAbs().maxCoeff());
    }
    detail::add(rep, "symmetry", "max|M - M^T|", worst, 0.0);
  }

  // --- field linearity: builds at different E differ only on the diagonal
  {
    ModelParams p0 = params, p1 = params;
    p0.Efield = 0.0;
    p1.Efield = 1.0;
    const Eigen::MatrixXd diff = build_hamiltonian(p1, 0.0).entries -
                                 build_hamiltonian(p0, 0.0).entries;
    double worst = 0.0;
    for (std::int64_t r = 0; r < params.dim(); ++r) {
      const int q = basis_at(params, r).q;
      const double expected = -params.e * 2.0 * pi * q / (params.lambda * L);
      worst = std::max(worst, std::abs(diff(r, r) - expected));
      for (std::int64_t c = 0; c < params.dim(); ++c)
        if (c != r) worst = std::max(worst, std::abs(diff(r, c)));
    }
    detail::add(rep, "e_linearity", "diagonal difference -e dE 2 pi q/(lambda L)",
                worst, 1e-12);
  }

  // --- quadrature oracle vs closed form (quick only)
  if (level == VerifyLevel::quick) {
    const std::int64_t D = params.dim();
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    if (D <= 25) {
      for (std::int64_t r = 0; r < D; ++r)
        for (std::int64_t c = 0; c < D; ++c) pairs.emplace_back(r, c);
    } else {
      std::mt19937 rng(7u);
      std::uniform_int_distribution<std::int64_t> pick(0, D - 1);
      for (std::int64_t r = 0; r < D; ++r) pairs.emplace_back(r, r);
      for (int i = 0; i < 200; ++i) pairs.emplace_back(pick(rng), pick(rng));
    }
    double worst = 0.0, worst_imag = 0.0;
    const double k = 2.0 * pi / L;
    for (auto [ri, ci] : pairs) {
      const BasisIndex r = basis_at(params, ri);
      const BasisIndex c = basis_at(params, ci);
      const OracleValue ov = quadrature_element(params, k, r, c);
      const double closed = matrix_element(params, k, r, c);
      worst = std::max(worst,
                       std::abs(closed - ov.real) / (1.0 + std::abs(ov.real)));
      worst_imag = std::max(worst_imag, ov.imag_abs);
    }
    detail::add(rep, "oracle", "closed form vs quadrature (relative)", worst, 1e-6);
    detail::add(rep, "oracle", "imaginary part of integrals", worst_imag, 1e-8);
  }

  // --- k <-> -k reflection and px antisymmetry at E = 0
  {
    ModelParams p = params;
    p.Efield = 0.0;
    const BandData bd = compute_bands(p, M);
    const int K = int(bd.kvalues.size());
    double worst_e = 0.0, worst_px = 0.0;
    for (int ik = 0; ik < K; ++ik) {
      const int mirror = K - 1 - ik;  // grid symmetric about 0
      for (int b = 0; b < M; ++b) {
        worst_e = std::max(worst_e,
                           std::abs(bd.energies(b, ik) - bd.energies(b, mirror)));
        if (std::abs(bd.lvalues[size_t(ik)]) < p.N / 2)
          worst_px = std::max(worst_px,
                              std::abs(bd.px(b, ik) + bd.px(b, mirror)));
      }
    }
    detail::add(rep, "reflection", "energy(k) vs energy(-k) at E=0", worst_e, 1e-8);
    detail::add(rep, "reflection", "px(k) + px(-k) at E=0 (interior k)", worst_px,
                1e-8);

    // Pi residual at E = 0 against the typical px scale
    double px_scale = 0.0;
    for (int ik = 0; ik < K; ++ik)
      for (int b = 0; b < M; ++b)
        px_scale = std::max(px_scale, std::abs(bd.px(b, ik)));
    px_scale = std::max(px_scale, 1.0);
    double worst_pi = 0.0;
    for (int b = 0; b < M; ++b)
      worst_pi = std::max(worst_pi, std::abs(bd.band_momentum_sum[size_t(b)]));
    detail::add(rep, "pi_residual", "max|Pi(E=0)| / px scale", worst_pi / px_scale,
                1e-4);
  }

  // --- Hellmann-Feynman at a generic field point
  {
    const double E0 = (params.Efield != 0.0) ? params.Efield : 0.5;
    const double dev = detail::hellmann_feynman_max_dev(params, M, E0, 1e-4);
    detail::add(rep, "hellmann_feynman", "d eps/dE vs -e<y> (relative)", dev, 1e-4);
  }

  std::sort(rep.entries.begin(), rep.entries.end(),
            [](const VerificationEntry& a, const VerificationEntry& b) {
              return a.suite == b.suite ? a.property < b.property
                                        : a.suite < b.suite;
            });
  return rep;
}

}  // namespace latticecond

#endif
