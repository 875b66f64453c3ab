#pragma once

#include <stdexcept>
#include <string>

namespace windest {

/// Malformed or contradictory run configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unreadable or structurally invalid data file (CLI exit code 2).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical routine diverged or left its validity domain (CLI exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace windest
