#pragma once

#include <stdexcept>
#include <string>

namespace crdtlab {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidReplicaError : public Error {
 public:
  using Error::Error;
};

// Mismatched vector lengths, bad replica counts, inconsistent scenario flags.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class EnumerationLimitError : public Error {
 public:
  using Error::Error;
};

// An effect was delivered in violation of the design's delivery precondition.
class DeliveryContractError : public Error {
 public:
  using Error::Error;
};

// Malformed scenario text. The message carries a byte offset or JSON pointer.
class ParseError : public Error {
 public:
  using Error::Error;
};

class FileError : public Error {
 public:
  using Error::Error;
};

// A payload invariant was broken. Indicates a bug, never bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace crdtlab
