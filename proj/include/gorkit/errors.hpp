#pragma once

#include <stdexcept>
#include <string>

namespace gorkit {

/// A stated precondition of an operation does not hold for the given inputs.
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gorenstein machinery was invoked on an algebra whose certificate is not
/// "certified": the finite criteria are not justified, so the operation
/// refuses instead of guessing.
struct not_certified_error : precondition_error {
  explicit not_certified_error(const std::string& what)
      : precondition_error("unavailable: " + what) {}
};

}  // namespace gorkit
