#pragma once

#include <utility>

#include "belay/param_vector.hpp"
#include "belay/params.hpp"
#include "belay/state.hpp"

namespace belay::physics {

// =============================================================================
// Continuous-time reference solution
// =============================================================================

/// Closed-form solution of the overdamped single-mass system
/// wdotdot = -(k/m) w - 2 delta wdot started at rest:
/// w(t) = C1 e^{(-delta + r) t} + C2 e^{(-delta - r) t}, r = sqrt(delta^2 - k/m).
struct ClosedFormParams {
  ParamVector w0;
  double k = 0.0;
  double m = 1.0;
  double delta = 1.0;
  ParamVector c1;  ///< coefficient of the slow mode
  ParamVector c2;  ///< coefficient of the fast mode
};

/// Mode coefficients from w(0) = w0, wdot(0) = 0:
/// C1 = w0 (delta + r) / (2 r), C2 = w0 (r - delta) / (2 r), so C1 + C2 = w0.
/// Requires strict overdamping delta^2 > k/m; throws ConfigError otherwise.
std::pair<ParamVector, ParamVector> integration_constants(const ParamVector& w0,
                                                          double k, double m,
                                                          double delta);

/// Bundles the inputs and constants for repeated evaluation.
ClosedFormParams make_closed_form(ParamVector w0, double k, double m,
                                  double delta);

/// Position at time t >= 0.
ParamVector overdamped_position(const ClosedFormParams& p, double t);

// =============================================================================
// Spring schedule
// =============================================================================

/// k(T) = k0 * T0 / T. Rescaling the spring with the horizon keeps the total
/// contraction of the averaged point approximately independent of T.
struct ScheduleParams {
  double k0 = 1.0;
  double t0 = 1e6;
  double t = 1e6;
};

/// Throws ConfigError unless all three fields are positive and finite.
double spring_constant_schedule(const ScheduleParams& p);

// =============================================================================
// Discrete two-mass integrator
// =============================================================================

/// One Euler step of the coupled system. Both particles advance with
/// w += v dt + (1/2) a dt^2 and v += a dt, where the accelerations read the
/// incoming state only:
///   a1 = (k/m1)(w2 - w1) - (c1/m1) v1 + f/m1
///   a2 = (k/m2)(w1 - w2) - (c2/m2) v2 + 0/m2
/// The external force acts on particle 1 only. Callers are expected to have
/// validated p; non-finite output entries signal divergence and are the
/// caller's to detect via state_finite.
OscillatorState euler_two_mass_step(const OscillatorState& s,
                                    const BelayParams& p,
                                    const ParamVector& external_force);

}  // namespace belay::physics
