#pragma once

#include <stdexcept>
#include <string>

namespace occkit {

/// A parameter lies outside the domain of the requested operation.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// An exact computation would exceed the configured digit budget.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace occkit
