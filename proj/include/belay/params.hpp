#pragma once

#include <optional>
#include <string>

namespace belay {

/// Parameters of the coupled two-particle system. Particle 1 carries the
/// inner optimizer's force, particle 2 is the averaged point reported for
/// evaluation. alpha/beta are the derived position-averaging weights; the
/// discrete step is stable only when both lie in (0, 1].
struct BelayParams {
  double k = 1.0;     ///< spring constant
  double m1 = 10.0;   ///< mass of particle 1
  double m2 = 20.0;   ///< mass of particle 2
  double c1 = 20.0;   ///< damping coefficient of particle 1
  double c2 = 40.0;   ///< damping coefficient of particle 2
  double eta = 0.01;  ///< learning rate scaling the inner step direction
  double dt = 1.0;    ///< integrator time step
  /// Set by validate_params iff c_i = 2 m_i / dt for both particles, which
  /// zeroes the velocity contribution to the position updates.
  bool fully_damped = false;

  [[nodiscard]] double alpha() const { return 1.0 - k * dt * dt / (2.0 * m1); }
  [[nodiscard]] double beta() const { return 1.0 - k * dt * dt / (2.0 * m2); }

  friend bool operator==(const BelayParams&, const BelayParams&) = default;
};

/// Checks every parameter constraint and recomputes fully_damped. Returns
/// std::nullopt when the parameters are valid, otherwise a message naming the
/// violated constraint. Same input always yields the same verdict.
std::optional<std::string> validate_params(BelayParams& p);

/// validate_params, throwing ConfigError on the first violation.
BelayParams validated(BelayParams p);

/// Parameters with c_i = 2 m_i / dt, the fully damped configuration.
BelayParams fully_damped_params(double k, double m1, double m2, double eta,
                                double dt = 1.0);

}  // namespace belay
