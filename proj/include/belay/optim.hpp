#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "belay/objective.hpp"
#include "belay/param_vector.hpp"
#include "belay/params.hpp"
#include "belay/state.hpp"

namespace belay::optim {

// =============================================================================
// Baseline optimizers
// =============================================================================

struct SgdState {
  double lr = 1e-3;
};

/// w - lr * grad, with grad the gradient of the loss.
ParamVector sgd_step(const SgdState& s, const ParamVector& w,
                     const ParamVector& grad);

/// Momentum accumulates the signed step direction: callers pass the descent
/// direction (-grad of the loss) when minimizing.
struct MomentumSgdState {
  double lr = 1e-3;     ///< step scale applied to the accumulated velocity
  double lambda = 0.9;  ///< weight of the newest direction
  ParamVector v;
};

/// v <- lambda * step_dir + (1 - lambda) * v; returns w + lr * v.
ParamVector momentum_sgd_step(MomentumSgdState& s, const ParamVector& w,
                              const ParamVector& step_dir);

struct AdamState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  ParamVector m;
  ParamVector v;
  std::int64_t t = 0;
  // running beta^t, advanced once per step to avoid pow()
  double beta1_pow = 1.0;
  double beta2_pow = 1.0;

  static AdamState init(double lr, double beta1, double beta2, double eps,
                        std::size_t dim);
};

/// Bias-corrected unit step direction -mhat / (sqrt(vhat) + eps); advances
/// the moment estimates. adam_step scales this by lr.
ParamVector adam_direction(AdamState& s, const ParamVector& grad);

/// Standard bias-corrected Adam update: w - lr * mhat / (sqrt(vhat) + eps).
ParamVector adam_step(AdamState& s, const ParamVector& w,
                      const ParamVector& grad);

/// Exponential moving average of iterates; alpha weighs the new iterate.
struct EmaState {
  double alpha = 0.95;
  ParamVector w_ema;
};

/// w_ema <- alpha * w_star + (1 - alpha) * w_ema
void ema_update(EmaState& s, const ParamVector& w_star);

// =============================================================================
// BELAY
// =============================================================================

using InnerState = std::variant<SgdState, MomentumSgdState, AdamState>;

/// Unit-lr signed step direction of the inner optimizer at the current point,
/// advancing its internal state. Takes the raw loss gradient.
ParamVector inner_direction(InnerState& inner, const ParamVector& grad);

struct BelayState {
  BelayParams params;
  OscillatorState osc;
  InnerState inner;

  static BelayState init(BelayParams params, InnerState inner,
                         const ParamVector& w0);
};

/// One BELAY step, in this order:
///   g   = inner direction at w1
///   w1* = w1 + eta g
///   M_i = (1 - c_i/(2 m_i)) v_i
///   w1 <- alpha w1* + (1-alpha) w2 + M1
///   w2 <- beta w2 + (1-beta) w1_old + M2
///   v1 += (k/m1)(w2_old - w1_old) - (c1/m1) v1 + (eta/(2 alpha)) g
///   v2 += (k/m2)(w1_old - w2_old) - (c2/m2) v2
/// Velocity updates read pre-update positions (synchronous step).
/// forced_alpha overrides alpha, modeling the m1 -> infinity limit in which
/// particle 1 follows the bare inner optimizer and particle 2 is an EMA.
void belay_step(BelayState& s, const ObjectiveFunction& objective,
                std::optional<double> forced_alpha = std::nullopt);

// =============================================================================
// Run loop
// =============================================================================

/// All knobs of a single method run. Fields irrelevant to the method are
/// ignored (e.g. belay is unused by plain adam).
struct MethodConfig {
  double lr = 1e-3;
  double lambda = 0.9;  ///< momentum mixing weight
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double ema_alpha = 0.95;
  BelayParams belay{};

  friend bool operator==(const MethodConfig&, const MethodConfig&) = default;
};

/// Known method identifiers:
/// sgd, momentum_sgd, adam, ema_sgd, ema_adam, belay_sgd, belay_adam.
const std::vector<std::string>& method_ids();
bool known_method(const std::string& id);

/// Runs `method` on the objective from w0 for at most `steps` steps and logs
/// one record per executed step (post-update state, step index starting at 1).
/// Stops early when the divergence cutoff triggers; the diverged record is
/// kept. Deterministic: identical inputs produce identical trajectories.
/// Throws ConfigError for an unknown method, steps < 1, or invalid params.
std::vector<TrajectoryRecord> run_optimizer(const std::string& method,
                                            const ObjectiveFunction& objective,
                                            const ParamVector& w0,
                                            std::int64_t steps,
                                            const MethodConfig& config);

}  // namespace belay::optim
