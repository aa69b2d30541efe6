#pragma once

#include <cstdint>

#include "belay/core.hpp"
#include "belay/param_vector.hpp"

namespace belay {

/// Positions and velocities of both particles plus the step counter.
struct OscillatorState {
  ParamVector w1;  ///< particle 1 position (inner optimizer iterate)
  ParamVector v1;  ///< particle 1 velocity
  ParamVector w2;  ///< particle 2 position (averaged point)
  ParamVector v2;  ///< particle 2 velocity
  std::int64_t t = 0;

  /// Both particles at the given positions with zero velocity.
  static OscillatorState at_rest(ParamVector w1_init, ParamVector w2_init) {
    OscillatorState s;
    s.v1 = ParamVector::zeros(w1_init.size());
    s.v2 = ParamVector::zeros(w2_init.size());
    s.w1 = std::move(w1_init);
    s.w2 = std::move(w2_init);
    return s;
  }
};

/// True iff every entry of every state vector is finite.
inline bool state_finite(const OscillatorState& s) {
  return s.w1.all_finite() && s.v1.all_finite() && s.w2.all_finite() &&
         s.v2.all_finite();
}

/// Divergence test used by every run loop: non-finite state or runaway w1.
inline bool state_diverged(const OscillatorState& s) {
  return !state_finite(s) || norm(s.w1) > kDivergenceNormCutoff;
}

/// One logged step of an optimizer run. For methods without an averaged
/// point, w2 mirrors w1.
struct TrajectoryRecord {
  std::int64_t step = 0;
  ParamVector w1;
  ParamVector w2;
  double f_w1 = 0.0;
  double f_w2 = 0.0;
  double grad_norm = 0.0;
  bool diverged = false;
};

}  // namespace belay
