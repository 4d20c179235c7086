#pragma once

#include <stdexcept>
#include <string>

namespace qfleck {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by monic division when the divisor is zero or not monic.
class NonMonicDivisor : public Error {
 public:
  using Error::Error;
};

// Thrown when an exact quotient does not exist.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

// Thrown when an operation is undefined for the zero polynomial.
class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};

// Thrown when elements of distinct rings Z[zeta_2c] are mixed.
class CtxMismatch : public Error {
 public:
  using Error::Error;
};

// Thrown when a Z[zeta_2c][q] value has no image in Z[q].
class NotRational : public Error {
 public:
  using Error::Error;
};

// Thrown by the polynomial text parsers.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfleck
