#ifndef EULERKIN_ERRORS_HPP
#define EULERKIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eulerkin {

/// Riemann invariants requested at (or below) the vacuum floor.
struct VacuumError : std::runtime_error {
  explicit VacuumError(const std::string& what) : std::runtime_error(what) {}
};

/// No Lax-admissible branch of the Hugoniot locus in the requested direction.
struct AdmissibilityError : std::runtime_error {
  explicit AdmissibilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid interval ordering (lambda1 > lambda2).
struct OrderingError : std::runtime_error {
  explicit OrderingError(const std::string& what) : std::runtime_error(what) {}
};

/// A stencil, ball, ladder or kernel support leaves the recorded domain.
struct GeometryError : std::runtime_error {
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad run configuration (CFL violation, invalid grid, schema errors...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Root finder did not converge; message carries the bracket.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation needs data only one scheme produces (e.g. collapse logs).
struct UnsupportedSchemeError : std::runtime_error {
  explicit UnsupportedSchemeError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal invariant violated (a bug, not a user error).
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace eulerkin

#endif
