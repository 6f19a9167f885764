#pragma once

#include <stdexcept>
#include <string>

namespace sgspec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates an operation's precondition (zero function, bad switching domain, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Operation not defined for these arguments (p <= 1 on the smooth operator, kappa != 0 for Cheeger).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Enumeration over its size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgspec
