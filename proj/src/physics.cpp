#include "belay/physics.hpp"

#include <cmath>

#include "belay/core.hpp"

namespace belay::physics {

std::pair<ParamVector, ParamVector> integration_constants(const ParamVector& w0,
                                                          double k, double m,
                                                          double delta) {
  if (!(std::isfinite(k) && k >= 0.0)) throw ConfigError("k must be non-negative and finite");
  if (!(std::isfinite(m) && m > 0.0)) throw ConfigError("m must be positive and finite");
  if (!(std::isfinite(delta) && delta > 0.0)) throw ConfigError("delta must be positive and finite");
  const double disc = delta * delta - k / m;
  if (!(disc > 0.0)) throw ConfigError("not overdamped: requires delta^2 > k/m");
  const double r = std::sqrt(disc);
  const double s1 = (delta + r) / (2.0 * r);
  const double s2 = (r - delta) / (2.0 * r);
  return {s1 * w0, s2 * w0};
}

ClosedFormParams make_closed_form(ParamVector w0, double k, double m,
                                  double delta) {
  auto [c1, c2] = integration_constants(w0, k, m, delta);
  ClosedFormParams p;
  p.w0 = std::move(w0);
  p.k = k;
  p.m = m;
  p.delta = delta;
  p.c1 = std::move(c1);
  p.c2 = std::move(c2);
  return p;
}

ParamVector overdamped_position(const ClosedFormParams& p, double t) {
  const double r = std::sqrt(p.delta * p.delta - p.k / p.m);
  const double slow = std::exp((-p.delta + r) * t);
  const double fast = std::exp((-p.delta - r) * t);
  return lincomb(slow, p.c1, fast, p.c2);
}

double spring_constant_schedule(const ScheduleParams& p) {
  if (!(std::isfinite(p.k0) && p.k0 > 0.0)) throw ConfigError("k0 must be positive and finite");
  if (!(std::isfinite(p.t0) && p.t0 > 0.0)) throw ConfigError("t0 must be positive and finite");
  if (!(std::isfinite(p.t) && p.t > 0.0)) throw ConfigError("t must be positive and finite");
  return p.k0 * p.t0 / p.t;
}

namespace {

/// Acceleration on one particle from the incoming state. The same expression
/// shape runs for both particles (zero force for particle 2), which keeps the
/// integrator exactly symmetric under the particle swap.
ParamVector acceleration(const ParamVector& w_self, const ParamVector& w_other,
                         const ParamVector& v_self, double k, double m,
                         double c, const ParamVector& force) {
  ParamVector spring = (k / m) * (w_other - w_self);
  ParamVector damped = axpy(-(c / m), v_self, spring);
  return axpy(1.0 / m, force, damped);
}

}  // namespace

OscillatorState euler_two_mass_step(const OscillatorState& s,
                                    const BelayParams& p,
                                    const ParamVector& external_force) {
  detail::check_same_dim(s.w1, external_force);
  const ParamVector zero_force = ParamVector::zeros(s.w2.size());
  const ParamVector a1 =
      acceleration(s.w1, s.w2, s.v1, p.k, p.m1, p.c1, external_force);
  const ParamVector a2 =
      acceleration(s.w2, s.w1, s.v2, p.k, p.m2, p.c2, zero_force);
  const double half_dt2 = 0.5 * p.dt * p.dt;

  OscillatorState next;
  next.w1 = axpy(half_dt2, a1, axpy(p.dt, s.v1, s.w1));
  next.w2 = axpy(half_dt2, a2, axpy(p.dt, s.v2, s.w2));
  next.v1 = axpy(p.dt, a1, s.v1);
  next.v2 = axpy(p.dt, a2, s.v2);
  next.t = s.t + 1;
  return next;
}

}  // namespace belay::physics
