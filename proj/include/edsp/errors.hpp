#pragma once

#include <stdexcept>
#include <string>

namespace edsp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An argument outside the domain where the operation is defined (e.g. a valuation of zero).
class UndefinedInputError : public Error {
  public:
    using Error::Error;
};

/// A precomputed table (usually the prime sieve) is too small for the request.
class CapacityError : public Error {
  public:
    using Error::Error;
};

class OutOfDomainError : public Error {
  public:
    using Error::Error;
};

class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// The base point has finite order, so the sequence is not defined.
class TorsionPointError : public Error {
  public:
    using Error::Error;
};

/// No index inside the Hasse window p + 1 + 2 sqrt(p) is divisible by p.
class RankBoundViolation : public Error {
  public:
    using Error::Error;
};

class InvalidBlockError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace edsp
