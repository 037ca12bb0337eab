#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace agree {

// Bad arguments or malformed input. CLI exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds an enumeration or memory cap. CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checked invariant failed during a run. CLI exit code 4.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The hypothesis k >= 10 + 2(1-eps)/eps of the lower bound does not hold.
class ConditionError : public UsageError {
 public:
  ConditionError(const std::string& what, std::size_t minimal_k)
      : UsageError(what), minimal_k_(minimal_k) {}

  std::size_t minimal_k() const noexcept { return minimal_k_; }

 private:
  std::size_t minimal_k_;
};

}  // namespace agree
