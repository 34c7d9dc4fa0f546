#pragma once

#include <stdexcept>
#include <string>

namespace cehom {

// Rejected input or construction data (maps to CLI exit code 2).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematical consistency assertion failed (maps to CLI exit code 1).
class CheckFailure : public std::runtime_error {
 public:
  explicit CheckFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cehom
