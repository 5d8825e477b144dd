#pragma once

#include <stdexcept>
#include <string>

namespace cvoam {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad parameters, duplicate keys, ...).
class InputError : public Error {
public:
  using Error::Error;
};

/// A covariance matrix or source specification violates the uncertainty principle.
class UnphysicalStateError : public InputError {
public:
  using InputError::InputError;
};

/// The sampling grid cannot resolve the requested optical mode.
class ResolutionError : public InputError {
public:
  using InputError::InputError;
};

/// A computation hit a degenerate or ill-conditioned case.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// A homodyne sample batch has zero variance.
class DegenerateBatchError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

} // namespace cvoam
