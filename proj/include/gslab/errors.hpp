#pragma once

#include <stdexcept>
#include <string>

namespace gslab {

// Invalid argument: wrong q or n, malformed rankings, out-of-range indices.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact enumeration would exceed the configured profile cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructive procedure failed to produce the object a theorem guarantees.
// Always indicates a bug; never caught inside the library.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gslab
