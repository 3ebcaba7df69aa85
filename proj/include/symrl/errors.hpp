#ifndef SYMRL_ERRORS_HPP_
#define SYMRL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace symrl {

// Precondition or dimension-contract failure on a public operation.
class ContractViolation : public std::runtime_error {
 public:
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite value produced where a finite one is required.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Bad experiment configuration or mismatched comparison inputs.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace symrl

#endif  // SYMRL_ERRORS_HPP_
