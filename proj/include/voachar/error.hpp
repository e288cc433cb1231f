#pragma once

#include <stdexcept>
#include <string>

namespace voachar {

/// Bad user input: malformed expressions, out-of-range parameters, invalid
/// Gram matrices.  The CLI maps these to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation could not be carried out to the requested accuracy
/// (truncation tails, conditioning, series beyond their trusted range).
/// The CLI maps these to exit code 3.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PrecisionError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& what, std::size_t column)
      : InvalidArgument("column " + std::to_string(column) + ": " + what), column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

}  // namespace voachar
