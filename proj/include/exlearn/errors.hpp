#pragma once

#include <stdexcept>
#include <string>

namespace exlearn {

// Base of every error raised by the library. Subclasses name the failure
// kind so callers (the CLI in particular) can map them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a formula, or a malformed value.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The conditioning prefix has zero probability under the process.
class ImpossiblePrefix : public Error {
 public:
  using Error::Error;
};

// Exhaustive routines refuse inputs that would blow up combinatorially.
class SizeGuard : public Error {
 public:
  using Error::Error;
};

class EmptySample : public Error {
 public:
  using Error::Error;
};

class EmptyRecords : public Error {
 public:
  using Error::Error;
};

// Bound inversion: no epsilon in range satisfies bound <= n.
class Unreachable : public Error {
 public:
  using Error::Error;
};

// A value that should lie on a grid does not.
class OffGrid : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace exlearn
