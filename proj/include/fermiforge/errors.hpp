// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace fermiforge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad indices, inconsistent configuration, unparsable files.
/// The CLI maps these to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedInverseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnboundParameterError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedGateError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class WidthCapError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SymmetryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Method called out of order (e.g. get_resources before build).
class LifecycleError : public Error {
 public:
  using Error::Error;
};

/// Iterative procedure failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace fermiforge
