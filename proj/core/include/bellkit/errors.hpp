#pragma once

#include <stdexcept>
#include <string>

namespace bell {

// Raised when an exact computation would exceed its enumeration cap
// (e.g. too many deterministic strategies or polytope vertices).
// The CLI maps this to a distinct exit code so scripts can tell
// "inequality too large" apart from "bad arguments".
class LimitError : public std::runtime_error {
 public:
  explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bell
