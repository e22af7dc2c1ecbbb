#pragma once

#include <stdexcept>
#include <string>

namespace nonparax {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mathematically invalid argument (negative interval, epsilon out of range,
// no real branch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Grid, resolution or step-size setup that cannot support the requested
// computation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Spectral content at or beyond a hard band limit.
class BandLimitError : public Error {
 public:
  using Error::Error;
};

// Loop-integral input violating a checked admissibility hypothesis.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

// A refinement check moved the result by more than the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nonparax
