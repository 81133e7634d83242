#pragma once

#include <stdexcept>
#include <string>

namespace geoprog {

/// Input violates a mathematical precondition (non-hyperbolic element,
/// non-squarefree discriminant, non-coprime moduli, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bounded search ran out of budget before producing an answer.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace geoprog
