#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace takde {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgumentError : Error {
  using Error::Error;
};

struct InvalidBandwidthError : InvalidArgumentError {
  using InvalidArgumentError::InvalidArgumentError;
};

struct EmptyBatchError : InvalidArgumentError {
  using InvalidArgumentError::InvalidArgumentError;
};

struct EmptyStreamError : InvalidArgumentError {
  using InvalidArgumentError::InvalidArgumentError;
};

struct GridMismatchError : InvalidArgumentError {
  using InvalidArgumentError::InvalidArgumentError;
};

struct NumericError : Error {
  using Error::Error;
};

// Malformed stream files; carries the 1-based line number of the offending row.
class FormatError : public Error {
 public:
  FormatError(const std::string& message, std::size_t line)
      : Error(message + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace takde
