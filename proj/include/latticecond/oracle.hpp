#ifndef LATTICECOND_ORACLE_HPP
#define LATTICECOND_ORACLE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "latticecond/hamiltonian.hpp"
#include "latticecond/model.hpp"

namespace latticecond {

struct OracleValue {
  double real;
  double imag_abs;
  int grid_points;
};

namespace detail {

inline std::complex<double> oracle_trapezoid(const ModelParams& p, double k,
                                             const BasisIndex& r,
                                             const BasisIndex& c, int G) {
  const double L = p.L();
  const double lam = p.lambda;
  const double s = double(p.spin);
  const double yc = 2.0 * pi * c.q / (lam * L);  // y eigenvalue on phi_c
  const double pjc = 2.0 * pi * c.j / L + k;     // (p_x + k) eigenvalue on phi_c

  // x- and p_y-independent part of H_k phi_c / phi_c
  const double const_part = pjc * pjc / (2.0 * p.m) - s * lam / p.m * yc * pjc +
                            p.Uy * std::cos(2.0 * pi * yc / p.a()) -
                            p.e * p.Efield * yc;

  const double hx = L / G;
  const double hp = lam * L / G;
  const std::complex<double> I(0.0, 1.0);

  // phase factors of phi_r^* phi_c along each axis
  std::vector<std::complex<double>> ex(size_t(G) + 1), ep(size_t(G) + 1);
  for (int i = 0; i <= G; ++i) {
    const double x = -L / 2.0 + i * hx;
    const double py = -lam * L / 2.0 + i * hp;
    ex[size_t(i)] = std::exp(I * (2.0 * pi * (c.j - r.j) / L) * x);
    ep[size_t(i)] = std::exp(-I * (2.0 * pi * (c.q - r.q) / (lam * L)) * py);
  }

  std::complex<double> acc(0.0, 0.0);
  for (int ix = 0; ix <= G; ++ix) {
    const double x = -L / 2.0 + ix * hx;
    const double wx = (ix == 0 || ix == G) ? 0.5 : 1.0;
    const double ux = p.Ux * std::cos(2.0 * pi * x / p.a());
    const double shift = s * lam * x;
    std::complex<double> inner(0.0, 0.0);
    for (int ip = 0; ip <= G; ++ip) {
      const double py = -lam * L / 2.0 + ip * hp;
      const double wp = (ip == 0 || ip == G) ? 0.5 : 1.0;
      const double shifted = py + shift;
      const double scalar = const_part + shifted * shifted / (2.0 * p.m) + ux;
      inner += (wp * scalar) * ep[size_t(ip)];
    }
    acc += (wx)*ex[size_t(ix)] * inner;
  }
  return acc * (hx * hp / (L * L * lam));
}

}  // namespace detail

/// Plain trapezoid evaluation of <phi_r| H_k |phi_c> over the x p_y cell on a
/// uniform (grid_points+1)^2 grid.
///
/// H_k is applied to phi_c analytically: p_x and y act as eigenvalues
/// (p_x -> 2 pi j/L, y -> 2 pi q/(lambda L)), x and p_y act by multiplication.
/// Converges at O(1/G^2): the x and p_y multiplication factors are not
/// periodic over the cell, only the basis phases are.
inline OracleValue quadrature_element_raw(const ModelParams& p, double k,
                                          const BasisIndex& r, const BasisIndex& c,
                                          int grid_points) {
  if (grid_points < 32)
    throw InvalidParameterError("grid_points must be >= 32");
  const std::complex<double> acc = detail::oracle_trapezoid(p, k, r, c, grid_points);
  return OracleValue{acc.real(), std::abs(acc.imag()), grid_points};
}

/// Grid-converged oracle: Richardson extrapolation of the trapezoid values
/// over successive grid doublings (Romberg), declared converged when two
/// successive extrapolated values agree within 0.1x the target tolerance.
inline OracleValue quadrature_element(const ModelParams& p, double k,
                                      const BasisIndex& r, const BasisIndex& c,
                                      int start_grid = 64, double tol = 1e-6,
                                      int max_doublings = 5) {
  std::vector<std::array<std::complex<double>, 8>> table;
  std::complex<double> prev(0.0, 0.0);
  int G = start_grid;
  for (int level = 0; level < max_doublings; ++level, G *= 2) {
    std::array<std::complex<double>, 8> row{};
    row[0] = detail::oracle_trapezoid(p, k, r, c, G);
    for (int m = 1; m <= level && m < 8; ++m) {
      const double w = std::pow(4.0, m);
      row[size_t(m)] =
          (w * row[size_t(m - 1)] - table.back()[size_t(m - 1)]) / (w - 1.0);
    }
    table.push_back(row);
    const std::complex<double> best = row[size_t(std::min(level, 7))];
    if (level > 0 &&
        std::abs(best - prev) <= 0.1 * tol * (1.0 + std::abs(best)))
      return OracleValue{best.real(), std::abs(best.imag()), G};
    prev = best;
  }
  return OracleValue{prev.real(), std::abs(prev.imag()), G / 2};
}

}  // namespace latticecond

#endif
