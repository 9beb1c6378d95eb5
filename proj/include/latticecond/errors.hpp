#ifndef LATTICECOND_ERRORS_HPP
#define LATTICECOND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace latticecond {

struct InvalidParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iterative eigensolver failed to reach the requested residual.
struct SolverError : std::runtime_error {
  int iterations;
  double best_residual;
  SolverError(const std::string& what, int iters, double resid)
      : std::runtime_error(what), iterations(iters), best_residual(resid) {}
};

struct UnnormalizedInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Fermi level exceeds the highest computed band mean.
struct InsufficientBandsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoPlateauError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AmbiguousUnitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  int line;  // 0 when not tied to a specific line
  ConfigError(const std::string& what, int line_no = 0)
      : std::runtime_error(what), line(line_no) {}
};

}  // namespace latticecond

#endif
