#pragma once

#include <stdexcept>

namespace bremsbec {

/// Input violates a documented precondition (bad grid size, unknown config key, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A run produced non-finite values or otherwise lost numerical meaning.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bremsbec
