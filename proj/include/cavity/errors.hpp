#pragma once

#include <stdexcept>
#include <string>

namespace cavity {

// Exit-code contract shared by the CLI and the library error types:
// 0 feasible/success, 1 infeasible, 2 usage/format, 3 size cap, 4 internal invariant.

// Malformed input (DIMACS/JSON); message carries a position or JSON pointer path.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Caller violated an operation precondition (bad k, assignment not summing to target, ...).
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Instance exceeds an enumeration cap.
class SizeCapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A constructed object failed its own validity check; signals a bug, not bad input.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace cavity
