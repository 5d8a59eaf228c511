#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dicycle {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct SizeLimitError : Error {
  using Error::Error;
};

struct UndefinedDensity : Error {
  using Error::Error;
};

// A documented precondition of an algorithm (bi-density floor, etc.) does not hold.
struct PreconditionFailure : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct Timeout : Error {
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dicycle
