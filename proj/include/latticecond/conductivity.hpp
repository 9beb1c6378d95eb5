#ifndef LATTICECOND_CONDUCTIVITY_HPP
#define LATTICECOND_CONDUCTIVITY_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "latticecond/bands.hpp"
#include "latticecond/model.hpp"

namespace latticecond {

/// Transverse conductivity in units of alpha: sum of Pi over all bands whose
/// mean energy lies strictly below the Fermi level. Bands tied with the Fermi
/// level within 1e-9 are excluded.
inline double sigma_xy(const BandData& bands, double fermi_level,
                       int* n_included = nullptr, int* n_ties = nullptr) {
  const auto& means = bands.band_mean_energy;
  if (means.empty() || fermi_level > means.back())
    throw InsufficientBandsError(
        "Fermi level " + std::to_string(fermi_level) +
        " exceeds the highest computed band mean; increase M");
  double sigma = 0.0;
  int count = 0, ties = 0;
  for (size_t b = 0; b < means.size(); ++b) {
    if (std::abs(means[b] - fermi_level) <= 1e-9) {
      ++ties;
      continue;
    }
    if (means[b] < fermi_level) {
      sigma += bands.band_momentum_sum[b];
      ++count;
    }
  }
  if (n_included) *n_included = count;
  if (n_ties) *n_ties = ties;
  return sigma;
}

struct ConductivityCurve {
  double fermi_level = 0.0;
  std::vector<double> efield_values;
  std::vector<double> sigma_over_alpha;
  std::vector<int> n_bands_included;
  std::optional<double> sigma0_over_alpha;
  std::optional<std::vector<long>> integer_steps;
  std::vector<double> jump_locations;  // first efield after each change
};

struct SweepResult {
  std::vector<ConductivityCurve> curves;
  std::vector<double> efield_values;
  Eigen::MatrixXd band_means;  // M x E, for jump cross-validation
  int tie_warnings = 0;
};

/// Detects jumps: efield values where sigma changes by more than 1% of the
/// curve's sigma scale (with a floor for near-zero curves).
inline std::vector<double> detect_jumps(const std::vector<double>& efields,
                                        const std::vector<double>& sigma) {
  double scale = 0.0;
  for (double s : sigma) scale = std::max(scale, std::abs(s));
  const double tol = std::max(0.01 * scale, 1e-9);
  std::vector<double> jumps;
  for (size_t i = 1; i < sigma.size(); ++i)
    if (std::abs(sigma[i] - sigma[i - 1]) > tol) jumps.push_back(efields[i]);
  return jumps;
}

/// Recomputes the band structure at every field value and accumulates one
/// conductivity curve per Fermi level.
inline SweepResult sweep(const ModelParams& params,
                         const std::vector<double>& efields,
                         const std::vector<double>& fermi_levels, int M,
                         int threads = 1, bool drop_duplicate_edge = false) {
  if (efields.empty()) throw InvalidParameterError("efields must be non-empty");
  if (!std::is_sorted(efields.begin(), efields.end()))
    throw InvalidParameterError("efields must be ascending");
  const int E = int(efields.size());
  SweepResult out;
  out.efield_values = efields;
  out.band_means.resize(M, E);
  Eigen::MatrixXd pi_table(M, E);

  parallel_for(E, threads, [&](int ie) {
    ModelParams p = params;
    p.Efield = efields[size_t(ie)];
    BandData bd;
    try {
      bd = compute_bands(p, M, 1, drop_duplicate_edge);
    } catch (const SolverError& err) {
      throw SolverError("at E = " + std::to_string(p.Efield) + ", " + err.what(),
                        err.iterations, err.best_residual);
    }
    for (int b = 0; b < M; ++b) {
      out.band_means(b, ie) = bd.band_mean_energy[size_t(b)];
      pi_table(b, ie) = bd.band_momentum_sum[size_t(b)];
    }
  });

  for (double fermi : fermi_levels) {
    ConductivityCurve c;
    c.fermi_level = fermi;
    c.efield_values = efields;
    for (int ie = 0; ie < E; ++ie) {
      if (fermi > out.band_means(M - 1, ie))
        throw InsufficientBandsError(
            "Fermi level " + std::to_string(fermi) +
            " exceeds the highest band mean at E = " +
            std::to_string(efields[size_t(ie)]) + "; increase M");
      double sigma = 0.0;
      int count = 0;
      for (int b = 0; b < M; ++b) {
        const double mean = out.band_means(b, ie);
        if (std::abs(mean - fermi) <= 1e-9) {
          ++out.tie_warnings;
          continue;
        }
        if (mean < fermi) {
          sigma += pi_table(b, ie);
          ++count;
        }
      }
      c.sigma_over_alpha.push_back(sigma);
      c.n_bands_included.push_back(count);
    }
    c.jump_locations = detect_jumps(efields, c.sigma_over_alpha);
    out.curves.push_back(std::move(c));
  }
  return out;
}

struct Plateau {
  size_t first, last;  // inclusive index range into the curve
  double level;        // mean sigma over the run
};

/// Maximal runs where sigma varies by less than 1% of the curve scale.
inline std::vector<Plateau> find_plateaus(const ConductivityCurve& c) {
  double scale = 0.0;
  for (double s : c.sigma_over_alpha) scale = std::max(scale, std::abs(s));
  const double tol = std::max(0.01 * scale, 1e-9);
  std::vector<Plateau> out;
  size_t start = 0;
  double lo = c.sigma_over_alpha.empty() ? 0.0 : c.sigma_over_alpha[0];
  double hi = lo;
  for (size_t i = 1; i <= c.sigma_over_alpha.size(); ++i) {
    bool flush = (i == c.sigma_over_alpha.size());
    if (!flush) {
      const double v = c.sigma_over_alpha[i];
      if (std::max(hi, v) - std::min(lo, v) <= tol) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      } else {
        flush = true;
      }
    }
    if (flush) {
      Plateau pl;
      pl.first = start;
      pl.last = i - 1;
      double sum = 0.0;
      for (size_t j = start; j < i; ++j) sum += c.sigma_over_alpha[j];
      pl.level = sum / double(i - start);
      out.push_back(pl);
      if (i < c.sigma_over_alpha.size()) {
        start = i;
        lo = hi = c.sigma_over_alpha[i];
      }
    }
  }
  return out;
}

struct Sigma0Estimate {
  double sigma0_over_alpha = 0.0;
  std::vector<std::vector<long>> assignments;  // per curve, per plateau
  double residual = 0.0;  // total |level/u - round(level/u)|
};

/// Fits the largest unit u such that every plateau level is within 5% of an
/// integer multiple of u. Candidates are level/r for small integers r; among
/// near-maximal feasible units the one with the smallest total rounding
/// residual wins.
inline Sigma0Estimate estimate_sigma0(const std::vector<ConductivityCurve>& curves,
                                      int max_ratio = 12) {
  std::vector<std::vector<Plateau>> plats;
  std::vector<double> levels;  // nonzero plateau levels across all curves
  double scale = 0.0;
  for (const auto& c : curves)
    for (double s : c.sigma_over_alpha) scale = std::max(scale, std::abs(s));
  const double zero_tol = std::max(0.01 * scale, 1e-9);
  for (const auto& c : curves) {
    plats.push_back(find_plateaus(c));
    for (const auto& pl : plats.back())
      if (std::abs(pl.level) > zero_tol) levels.push_back(std::abs(pl.level));
  }
  if (levels.empty())
    throw NoPlateauError("no nonzero conductivity plateau found");

  struct Candidate {
    double u;
    double residual;
    std::vector<long> ints;  // assignment for `levels`
  };
  std::vector<Candidate> feasible;
  for (double lvl : levels) {
    for (int r = 1; r <= max_ratio; ++r) {
      const double u = lvl / r;
      bool ok = true;
      double resid = 0.0;
      std::vector<long> ints;
      for (double v : levels) {
        const long m = std::lround(v / u);
        if (m == 0 || std::abs(v - double(m) * u) > 0.05 * u) {
          ok = false;
          break;
        }
        resid += std::abs(v / u - double(m));
        ints.push_back(m);
      }
      if (ok) feasible.push_back({u, resid, std::move(ints)});
    }
  }
  if (feasible.empty())
    throw NoPlateauError("no unit fits all plateau levels within 5%");

  double umax = 0.0;
  for (const auto& c : feasible) umax = std::max(umax, c.u);
  const Candidate* best = nullptr;
  for (const auto& c : feasible) {
    if (c.u < 0.98 * umax) continue;
    if (best && c.ints != best->ints)
      throw AmbiguousUnitError(
          "two near-maximal units disagree on integer assignments");
    if (!best || c.residual < best->residual) best = &c;
  }

  Sigma0Estimate est;
  est.sigma0_over_alpha = best->u;
  est.residual = best->residual;
  for (const auto& pls : plats) {
    std::vector<long> row;
    for (const auto& pl : pls) {
      const long m = std::lround(pl.level / best->u);
      row.push_back(m);
    }
    est.assignments.push_back(std::move(row));
  }
  return est;
}

/// Fills sigma0 and per-point integer steps on each curve from a fitted unit.
inline void annotate_quantization(std::vector<ConductivityCurve>& curves,
                                  const Sigma0Estimate& est) {
  for (auto& c : curves) {
    c.sigma0_over_alpha = est.sigma0_over_alpha;
    std::vector<long> steps;
    for (double s : c.sigma_over_alpha)
      steps.push_back(std::lround(s / est.sigma0_over_alpha));
    c.integer_steps = std::move(steps);
  }
}

/// Zero-field limit by linear fit through the three smallest positive fields.
inline double extrapolate_zero_field(const ConductivityCurve& c) {
  std::vector<std::pair<double, double>> pts;
  for (size_t i = 0; i < c.efield_values.size() && pts.size() < 3; ++i)
    if (c.efield_values[i] > 0.0)
      pts.emplace_back(c.efield_values[i], c.sigma_over_alpha[i]);
  if (pts.size() < 2)
    throw InvalidParameterError("need at least two positive-field points to extrapolate");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = double(pts.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return (sy - slope * sx) / n;
}

}  // namespace latticecond

#endif
