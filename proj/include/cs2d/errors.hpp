#pragma once

#include <stdexcept>
#include <string>

namespace cs2d {

/// Root of every error raised by the library. Validation errors (bad input)
/// and contract errors (a numerical check failed) are kept apart so callers
/// such as the CLI can map them to distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class OrderOverflowError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RatioMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class AnisotropicUnsupportedError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CutoffTooSmallError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnderResolvedError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SpaceMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace cs2d
