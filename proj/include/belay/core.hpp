#pragma once

#include <stdexcept>

namespace belay {

/// Raised for invalid parameters, malformed configs, and unknown identifiers.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an input file cannot be read or an output cannot be written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A run counts as diverged once any state entry is non-finite or the iterate
/// norm passes this cutoff. Divergence is a recorded outcome, not an error.
inline constexpr double kDivergenceNormCutoff = 1e8;

}  // namespace belay
