#pragma once

#include <stdexcept>
#include <string>

namespace ttr {

// Root of the library's exception hierarchy.  Callers that only care about
// the broad class can catch ValidationError (caller handed us something
// malformed) or NumericalError (the computation itself broke down).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Operands do not conform (t-product inner extents, slice counts, ...).
class ShapeMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A transform-domain tensor fails the conjugate-symmetry test that every
// tensor derived from real data must satisfy.  Usually an upstream bug.
class SymmetryViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// An operation that requires a tensor equal to its own transpose was
// handed one that is not, beyond tolerance.
class NotFSymmetric : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotPositiveDefinite : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A basis tensor expected to satisfy V^T * V = I (in the tensor sense)
// does not, beyond tolerance.
class NotFOrthogonal : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Fewer eigenvalues clear the zero threshold than the caller asked for.
class InsufficientNonzero : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A per-slice dense eigensolver failed to converge.
class SliceEigFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The trace-ratio problem violates its well-posedness conditions.
class IllPosed : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Denominator trace fell below tolerance during the ratio update.
class DegenerateDenominator : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Neighbourhood count is impossible for the sample count.
class BadK : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Labels missing, wrong length, or outside the expected range.
class LabelMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A local Gram system could not be solved even after regularisation.
class SingularGram : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A degree matrix used as a mass term is singular.
class SingularDegree : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Binary tensor file does not start with the expected magic bytes.
class BadMagic : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Binary tensor file ended before the declared payload.
class Truncated : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace ttr
