#pragma once

#include <stdexcept>
#include <string>

namespace fdehydro {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};
struct EmptySiteError : Error {
  using Error::Error;
};
struct NotNeighborError : Error {
  using Error::Error;
};
struct SizeMismatchError : Error {
  using Error::Error;
};
struct InvalidCheckpointError : Error {
  using Error::Error;
};
struct OrderViolationError : Error {
  using Error::Error;
};
struct TooLargeError : Error {
  using Error::Error;
};
struct DegenerateError : Error {
  using Error::Error;
};
struct StiffnessFailure : Error {
  using Error::Error;
};
struct NegativityBreach : Error {
  using Error::Error;
};
struct GridMismatchError : Error {
  using Error::Error;
};
struct DivisionByZeroError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace fdehydro
