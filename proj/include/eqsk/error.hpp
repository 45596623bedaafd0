#pragma once

#include <stdexcept>
#include <string>

namespace eqsk {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed: bad table, broken action, dimension mismatch.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured size cap.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

/// A result does not fit the requested integer width.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Checked data failed validation; `witness()` is a JSON text describing the
/// first counterexample.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::string witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

/// A truncated category is too small for the requested functor.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int required_bound)
      : Error(what), required_bound_(required_bound) {}
  int required_bound() const noexcept { return required_bound_; }

 private:
  int required_bound_;
};

/// K0 rank changed between two truncation bounds.
class StabilizationError : public Error {
 public:
  StabilizationError(const std::string& what, int rank_low, int rank_high)
      : Error(what), rank_low_(rank_low), rank_high_(rank_high) {}
  int rank_low() const noexcept { return rank_low_; }
  int rank_high() const noexcept { return rank_high_; }

 private:
  int rank_low_;
  int rank_high_;
};

/// Finite data lacks a colimit the construction needs.
class IncompletenessError : public Error {
 public:
  using Error::Error;
};

}  // namespace eqsk
