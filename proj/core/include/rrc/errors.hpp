#pragma once

#include <stdexcept>
#include <string>

namespace rrc {

// Rejected input: malformed data, violated precondition, out-of-range
// parameter.  Maps to process exit code 2 in the CLI.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An exact search was asked to exceed its configured instance-size or node
// budget.  Maps to process exit code 3 in the CLI.
class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rrc
