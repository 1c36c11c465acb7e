#pragma once

#include <stdexcept>
#include <string>

namespace eqloc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad sizes, malformed input text, out-of-range indices.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operands live in rings with different numbers of variables.
class ArityMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Errors caused by mathematically inconsistent data rather than bad syntax.
class MathError : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public MathError {
 public:
  using MathError::MathError;
};

/// A sum of fractions left a residual denominator.
class NotPolynomial : public MathError {
 public:
  using MathError::MathError;
};

class NotSymmetric : public MathError {
 public:
  using MathError::MathError;
};

class NotTranslationInvariant : public MathError {
 public:
  using MathError::MathError;
};

/// A congruence system has no solution.
class Inconsistent : public MathError {
 public:
  using MathError::MathError;
};

/// A congruence system has more than one solution.
class Underdetermined : public MathError {
 public:
  using MathError::MathError;
};

}  // namespace eqloc
