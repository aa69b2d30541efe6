#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace belay::validate {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// =============================================================================
// Fine-grained checks (shared with the test suites)
// =============================================================================

/// Max |euler - closed form| over t in [0, t_end] for the single-mass
/// overdamped system wdotdot = -(k/m) w - 2 delta wdot started at rest at w0.
/// The Euler run drives the two-mass integrator with particle 2 pinned by a
/// huge mass at the origin.
double euler_closed_form_max_error(double k, double m, double delta, double w0,
                                   double t_end, double dt);

/// ||w(t_horizon)|| / ||w0|| under k = k0 t0 / t_horizon, closed form, mass m,
/// damping delta.
double schedule_contraction(double k0, double t0, double t_horizon, double m,
                            double delta);

/// True iff swapping the two particles (masses, dampings, states) mirrors the
/// trajectory bit-for-bit over `steps` force-free Euler steps.
bool euler_swap_symmetric(int steps);

/// Runs the damped force-free system from a moving start and reports whether
/// total energy ever increased; worst per-step relative uptick lands in
/// *max_uptick when non-null.
bool energy_non_increasing(double dt, int steps, double* max_uptick = nullptr);

/// Max per-step deviation between BELAY in the m1 -> infinity limit (alpha
/// forced to 1, fully damped) and the pair (bare inner optimizer, EMA with
/// alpha = 1 - beta) on one test function. inner is "sgd" or "adam".
double ema_limit_max_deviation(const std::string& function,
                               const std::string& inner, double eta,
                               std::int64_t steps);

struct MomentumLinearReport {
  double recursive_vs_unrolled = 0.0;   ///< max |v(t) - unrolled sum|
  double unrolled_vs_grad_at_avg = 0.0; ///< max |v(t) - S * grad(weighted avg)|
  bool gradient_identity_exact = false; ///< grad(avg) == grad(iterate) bitwise
};

/// Momentum on random linear objectives: the recursion equals its unrolled
/// geometric sum, which by linearity equals the (coefficient-sum scaled)
/// gradient at the correspondingly weighted average of past iterates.
MomentumLinearReport momentum_linear_check(std::uint64_t seed, int objectives,
                                           int steps);

// =============================================================================
// Suites
// =============================================================================

std::vector<CheckResult> physics_suite();
std::vector<CheckResult> ema_limit_suite();
std::vector<CheckResult> momentum_linear_suite();

}  // namespace belay::validate
