#pragma once

#include <stdexcept>
#include <string>

namespace borelab {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller-supplied input violates a documented precondition. The CLI maps
/// this family to exit code 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation exactly at the pole u = c of the potential or vector field.
class SingularInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// An operation that only makes sense in one regime was called in the other.
class WrongRegime : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class GridMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A computation that was well posed failed numerically. The CLI maps this
/// family to exit code 3.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class StepFailure : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class SpanExceeded : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// The orbit came within 1e-9 of the pole u = c.
class SingularityApproach : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class InsufficientSamples : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// Non-finite values or loss of positive depth during time stepping.
class Instability : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

}  // namespace borelab
