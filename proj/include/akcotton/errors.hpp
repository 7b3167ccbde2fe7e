#pragma once

#include <stdexcept>
#include <string>

namespace akc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The bracket fails the Jacobi identity, so no Lie group realizes it.
class JacobiViolation : public Error {
 public:
  using Error::Error;
};

class SingularMetric : public Error {
 public:
  using Error::Error;
};

/// No unit vector carries an almost Kenmotsu structure on the input.
class NoStructure : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure; indicates a bug rather than bad input.
class InconsistentStructure : public Error {
 public:
  using Error::Error;
};

/// The evolving metric left the positive-definite cone.
class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

class AssertionFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class FileNotFound : public Error {
 public:
  using Error::Error;
};

/// Input parsed but describes an invalid metric Lie algebra.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace akc
