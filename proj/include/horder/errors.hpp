#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace horder {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Degree out of range (empty root list, derivative of a constant, cap exceeded).
class DegreeError : public Error {
 public:
  using Error::Error;
};

/// A parameter lies outside its admissible domain (non-positive epsilon,
/// complex parameter where only reals are allowed, bad grid).
class ParameterDomainError : public Error {
 public:
  using Error::Error;
};

/// Root iteration failed to reach the residual target.
class RootSolveError : public Error {
 public:
  RootSolveError(const std::string& what, double best_residual)
      : Error(what), best_residual(best_residual) {}
  double best_residual;
};

/// A polynomial expected to be real-rooted has a zero off the real axis.
class NotHyperbolic : public Error {
 public:
  explicit NotHyperbolic(const std::string& what,
                         std::complex<double> offending = {})
      : Error(what), offending_root(offending) {}
  std::complex<double> offending_root;
};

/// Trajectory continuation could not disambiguate labels at the step floor.
class LabelAmbiguity : public Error {
 public:
  using Error::Error;
};

/// Vector/matrix dimensions do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Witness or chain requested for a pair that is not majorized.
class NotMajorized : public Error {
 public:
  using Error::Error;
};

/// Simplex pivot cap exhausted; treated as a hard error, never as a verdict.
class SolverStall : public Error {
 public:
  using Error::Error;
};

/// Matrix fails the doubly stochastic test (or its support admits no
/// perfect matching while mass remains).
class NotDoublyStochastic : public Error {
 public:
  using Error::Error;
};

/// Contraction step violates 0 < t <= (x_l - x_k)/2 or pairs equal entries.
class InvalidContraction : public Error {
 public:
  using Error::Error;
};

/// Multiset has repeated entries where simple roots are required.
class MultipleRoots : public Error {
 public:
  using Error::Error;
};

/// Chain construction exceeded its step cap.
class StepCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Root-velocity denominator vanished (root is not simple at this lambda).
class SingularVelocity : public Error {
 public:
  using Error::Error;
};

/// Suite name not present in the registry.
class UnknownSuite : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (CLI / JSON layer).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace horder
