#pragma once

#include <stdexcept>
#include <string>

namespace vortexsphere {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Chart / geometry errors.
struct PoleError : Error {
  using Error::Error;
};
struct ChartError : Error {
  using Error::Error;
};
struct NonFiniteError : Error {
  using Error::Error;
};

// Group construction errors.
struct UnsupportedGroup : Error {
  using Error::Error;
};
struct NotInvariant : Error {
  using Error::Error;
};
struct NotInFixedSet : Error {
  using Error::Error;
};

// Dynamics errors.
struct CollisionError : Error {
  using Error::Error;
};
struct ToleranceError : Error {
  using Error::Error;
};

// Polynomial / root-finding errors.
struct UnsupportedDegree : Error {
  using Error::Error;
};
struct NoBracket : Error {
  using Error::Error;
};
struct MultipleRoots : Error {
  using Error::Error;
};
struct DegenerateHessian : Error {
  using Error::Error;
};

// Orbit-analysis errors.
struct NoReturn : Error {
  using Error::Error;
};
struct NotRegular : Error {
  using Error::Error;
};
struct EnergyUnreachable : Error {
  using Error::Error;
};
struct ResidualTooLarge : Error {
  using Error::Error;
};

// Configuration / input errors (CLI exit code 2 territory).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace vortexsphere
