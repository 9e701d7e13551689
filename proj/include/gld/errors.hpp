#pragma once

#include <stdexcept>
#include <string>

namespace gld {

struct EmptyGridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The potential is defined on (-inf, 1] only; evaluation past t = 1 is
// refused instead of extrapolated.
struct PotentialDomainViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridTooCoarseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NewtonDivergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IterationStalledError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoSignChangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonPositivePhiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotInEPerpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MaxItersExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gld
