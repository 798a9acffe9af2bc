#pragma once

#include <stdexcept>
#include <string>

namespace arboreal {

// Raised when an operation's precondition does not hold. The message names
// the violated condition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a value would break a structural invariant (non-reduced word,
// non-bijective table, incompatible portrait).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace arboreal
