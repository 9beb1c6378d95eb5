#ifndef LATTICECOND_MODEL_HPP
#define LATTICECOND_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "latticecond/errors.hpp"

namespace latticecond {

inline constexpr double pi = std::numbers::pi;

struct Geometry {
  double L;     // system length
  double a;     // lattice constant, L = N a
  int q_max;    // (Q-1)/2
};

/// Solves the symmetry quantization condition for the system length:
/// L = sqrt(2*pi*(Q-1)/lambda), a = L/N, q_max = (Q-1)/2.
inline Geometry derive_geometry(int Q, double lambda, int N) {
  if (Q < 3 || Q % 2 == 0)
    throw InvalidParameterError("Q must be an odd integer >= 3, got " + std::to_string(Q));
  if (!(lambda > 0.0))
    throw InvalidParameterError("lambda must be positive, got " + std::to_string(lambda));
  if (N < 2 || N % 2 != 0)
    throw InvalidParameterError("N must be an even integer >= 2, got " + std::to_string(N));
  Geometry g;
  g.L = std::sqrt(2.0 * pi * (Q - 1) / lambda);
  g.a = g.L / N;
  g.q_max = (Q - 1) / 2;
  return g;
}

/// Physical constants and truncation sizes in atomic units (hbar = 1).
/// Immutable value type; the geometry (L, a) is always derived from (Q, lambda, N),
/// never set directly.
struct ModelParams {
  double m = 1.0;       // mass
  double e = 1.0;       // charge
  double lambda = 1.0;  // spin-orbit strength
  double Ux = 0.0;      // lattice potential amplitude, x axis
  double Uy = 0.0;      // lattice potential amplitude, y axis
  double Efield = 0.0;  // electric field along y (may be 0)
  int N = 2;            // cells per lattice side, even
  int Q = 3;            // number of position states, odd
  int J = 3;            // number of momentum states, odd
  int spin = +1;        // sigma_z sector, +1 or -1

  int q_max() const { return (Q - 1) / 2; }
  int n_max() const { return (J - 1) / 2; }
  std::int64_t dim() const { return std::int64_t(Q) * J; }
  double L() const { return std::sqrt(2.0 * pi * (Q - 1) / lambda); }
  double a() const { return L() / N; }
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::int64_t dim = 0;
  double matrix_bytes = 0.0;  // dense D x D of doubles

  bool valid() const { return violations.empty(); }
};

/// Report-style check of all parameter invariants; never throws.
inline ValidationReport validate(const ModelParams& p) {
  ValidationReport r;
  if (p.Q < 3 || p.Q % 2 == 0) r.violations.push_back("Q must be odd and >= 3");
  if (p.J < 1 || p.J % 2 == 0) r.violations.push_back("J must be odd and >= 1");
  if (p.N < 2 || p.N % 2 != 0) r.violations.push_back("N must be even and >= 2");
  if (!(p.m > 0.0)) r.violations.push_back("m must be positive");
  if (!(p.lambda > 0.0)) r.violations.push_back("lambda must be positive");
  if (p.spin != 1 && p.spin != -1) r.violations.push_back("spin must be +1 or -1");
  if (!std::isfinite(p.Ux) || !std::isfinite(p.Uy) || !std::isfinite(p.Efield) ||
      !std::isfinite(p.e))
    r.violations.push_back("Ux, Uy, Efield, e must be finite");
  if (r.valid()) {
    r.dim = p.dim();
    r.matrix_bytes = double(r.dim) * double(r.dim) * sizeof(double);
  }
  return r;
}

/// Throwing variant for call sites that require valid parameters.
inline void ensure_valid(const ModelParams& p) {
  const ValidationReport r = validate(p);
  if (!r.valid()) {
    std::string msg = "invalid model parameters:";
    for (const auto& v : r.violations) msg += " " + v + ";";
    throw InvalidParameterError(msg);
  }
}

}  // namespace latticecond

#endif
