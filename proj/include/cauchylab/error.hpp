#pragma once

#include <stdexcept>
#include <string>

namespace cauchylab {

/// Raised when caller-supplied data violates an operation's precondition.
/// The CLI maps this to exit status 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Kernel evaluated on the diagonal x == y.
class SingularityError : public InputError {
 public:
  explicit SingularityError(const std::string& what) : InputError(what) {}
};

}  // namespace cauchylab
