#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace crystalwalk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cartan type outside {A, B, C, D}.
class UnsupportedTypeError : public Error {
 public:
  using Error::Error;
};

/// A materialization (Weyl group, word enumeration, crystal BFS) would exceed its budget.
class ResourceLimitError : public Error {
 public:
  ResourceLimitError(const std::string& what, std::uint64_t partial_count)
      : Error(what), partial_count_(partial_count) {}
  explicit ResourceLimitError(const std::string& what) : Error(what) {}

  std::uint64_t partial_count() const noexcept { return partial_count_; }

 private:
  std::uint64_t partial_count_ = 0;
};

/// A weight that is required to be minuscule is not.
class NotMinusculeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration; `field` names the offending path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace crystalwalk
