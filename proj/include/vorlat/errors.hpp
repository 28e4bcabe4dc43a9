#pragma once

#include <stdexcept>
#include <string>

namespace vorlat {

// Error taxonomy. Every failure mode callers are expected to handle gets its
// own type so the CLI can map it to a stable exit code.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input problems (CLI exit code 2).
struct InputError : Error {
  using Error::Error;
};
struct DimensionMismatch : InputError {
  using InputError::InputError;
};
struct SingularBasis : InputError {
  using InputError::InputError;
};
struct KOutOfRange : InputError {
  using InputError::InputError;
};
struct NotPlanar : InputError {
  using InputError::InputError;
};
struct NotEuclidean : InputError {
  using InputError::InputError;
};
struct NonConvexNormRouting : InputError {
  using InputError::InputError;
};
struct IoError : InputError {
  using InputError::InputError;
};

// A verified mathematical claim failed (CLI exit code 1).
struct ClaimViolated : Error {
  using Error::Error;
};
struct CountViolation : ClaimViolated {
  using ClaimViolated::ClaimViolated;
};

// Work limit hit before completion (CLI exit code 3).
struct BudgetExceeded : Error {
  using Error::Error;
};

}  // namespace vorlat
