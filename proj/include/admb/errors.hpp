#pragma once

#include <stdexcept>
#include <string>

namespace admb {

/// Base class for every error raised by the library. The category maps onto
/// the CLI exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed configuration, violated preconditions.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Something went wrong numerically (CFL violation, broken invariant, NaN).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// File-system and snapshot format problems.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Two operands live on different grids.
class GridMismatch : public ConfigError {
 public:
  GridMismatch() : ConfigError("fields live on different grids") {}
};

}  // namespace admb
