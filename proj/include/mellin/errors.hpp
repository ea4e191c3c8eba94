#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mellin {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generators or operands from incompatible algebras were combined.
class MixedAlgebra : public Error {
 public:
  using Error::Error;
};

/// A generator index is outside 1..p.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A finite series window cannot hold the requested result.
class TruncationOverflow : public Error {
 public:
  using Error::Error;
};

/// Malformed operator text; carries the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// A function could not be evaluated at a shifted point.
class EvaluationFailure : public Error {
 public:
  using Error::Error;
};

class SingularEvaluation : public Error {
 public:
  using Error::Error;
};

/// The s-dependence of a test function cannot be shifted.
class NotSeparable : public Error {
 public:
  using Error::Error;
};

/// The operator does not annihilate the supplied function.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace mellin
