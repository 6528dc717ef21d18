#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(std::string name)
      : Error("unknown variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

struct InvalidInput : Error {
  using Error::Error;
};
struct EmptySet : Error {
  using Error::Error;
};
struct EmptyUniverse : Error {
  using Error::Error;
};
struct PreconditionViolation : Error {
  using Error::Error;
};
struct SizeUndefined : Error {
  using Error::Error;
};
struct NonPrincipal : Error {
  using Error::Error;
};
struct BadParameters : Error {
  using Error::Error;
};
struct UnknownClaim : Error {
  using Error::Error;
};
struct ClaimFailure : Error {
  using Error::Error;
};
struct BudgetExhausted : Error {
  using Error::Error;
};

}  // namespace deon
