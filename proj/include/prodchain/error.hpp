#pragma once

#include <stdexcept>
#include <string>

namespace prodchain {

/// Thrown when an operation's precondition on its inputs is violated.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input rejected because of one named field (registration, config files, ledger links).
class FieldError : public InvalidInput {
 public:
  FieldError(std::string field, const std::string& what)
      : InvalidInput(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Byte stream does not decode to a canonical value.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pairing check failed; the transaction must be aborted.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prodchain
