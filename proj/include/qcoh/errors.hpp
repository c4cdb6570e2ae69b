#pragma once

#include <stdexcept>
#include <string>

namespace qcoh {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape or dimension mismatch between operands.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

// Input violates a mathematical precondition (range, support, definiteness).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Constructed object fails its type invariants (non-density matrix, bad channel).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// File cannot be opened or does not match the documented schema. Kept apart
// from ValidationError so the CLI can distinguish malformed files (exit 2)
// from well-formed files holding a non-density matrix (exit 3).
class FileFormatError : public Error {
 public:
  explicit FileFormatError(const std::string& what) : Error(what) {}
};

// Iterative method failed to converge; carries the residual in the message.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// A trace that should be real came out with too large an imaginary part,
// or a similar inconsistency that indicates a bug rather than bad input.
class InternalConsistencyError : public Error {
 public:
  explicit InternalConsistencyError(const std::string& what) : Error(what) {}
};

}  // namespace qcoh
