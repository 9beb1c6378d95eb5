#ifndef LATTICECOND_SCATTERING_HPP
#define LATTICECOND_SCATTERING_HPP

#include <cmath>
#include <complex>

#include "latticecond/errors.hpp"

namespace latticecond {

/// 1D delta obstacle that backscatters only into the spin-flipped channel.
struct ScatteringInput {
  double U = 1.0;      // obstacle strength
  double theta = 0.0;  // rotation angle
  double kwave = 1.0;  // incident wavenumber, > 0
  double m = 1.0;      // mass, > 0
};

/// Reflected-to-incident amplitude ratio V/A from the matching condition at
/// the origin: V/A = 2 U cos(theta/2) / (i k/m - 2 U cos(theta/2)).
/// At theta = pi the reflected amplitude vanishes for any finite U.
inline std::complex<double> reflection_ratio(const ScatteringInput& in) {
  if (!(in.kwave > 0.0))
    throw InvalidParameterError("kwave must be positive");
  if (!(in.m > 0.0)) throw InvalidParameterError("m must be positive");
  // cos(theta/2) evaluated as sin((pi - theta)/2) so theta = pi is an exact zero
  const double half_pi = std::acos(-1.0) / 2.0;
  const double c = 2.0 * in.U * std::sin(half_pi - in.theta / 2.0);
  return c / (std::complex<double>(0.0, in.kwave / in.m) - c);
}

inline double reflection_probability(const ScatteringInput& in) {
  return std::norm(reflection_ratio(in));
}

}  // namespace latticecond

#endif
