#include "belay/optim.hpp"

#include <cmath>

#include "belay/core.hpp"
#include "belay/kernels.hpp"

namespace belay::optim {

ParamVector sgd_step(const SgdState& s, const ParamVector& w,
                     const ParamVector& grad) {
  return axpy(-s.lr, grad, w);
}

ParamVector momentum_sgd_step(MomentumSgdState& s, const ParamVector& w,
                              const ParamVector& step_dir) {
  if (s.v.empty()) s.v = ParamVector::zeros(step_dir.size());
  s.v = lincomb(s.lambda, step_dir, 1.0 - s.lambda, s.v);
  return axpy(s.lr, s.v, w);
}

AdamState AdamState::init(double lr, double beta1, double beta2, double eps,
                          std::size_t dim) {
  AdamState s;
  s.lr = lr;
  s.beta1 = beta1;
  s.beta2 = beta2;
  s.eps = eps;
  s.m = ParamVector::zeros(dim);
  s.v = ParamVector::zeros(dim);
  return s;
}

ParamVector adam_direction(AdamState& s, const ParamVector& grad) {
  if (s.m.empty()) {
    s.m = ParamVector::zeros(grad.size());
    s.v = ParamVector::zeros(grad.size());
  }
  s.t += 1;
  s.beta1_pow *= s.beta1;
  s.beta2_pow *= s.beta2;
  s.m = lincomb(s.beta1, s.m, 1.0 - s.beta1, grad);
  ParamVector grad_sq(grad.size());
  kernels::active().mul(grad_sq.data(), grad.data(), grad.data(), grad.size());
  s.v = lincomb(s.beta2, s.v, 1.0 - s.beta2, grad_sq);
  ParamVector dir(grad.size());
  kernels::active().adam_dir(dir.data(), s.m.data(), s.v.data(),
                             1.0 - s.beta1_pow, 1.0 - s.beta2_pow, s.eps,
                             grad.size());
  return dir;
}

ParamVector adam_step(AdamState& s, const ParamVector& w,
                      const ParamVector& grad) {
  return axpy(s.lr, adam_direction(s, grad), w);
}

void ema_update(EmaState& s, const ParamVector& w_star) {
  if (s.w_ema.empty()) {
    s.w_ema = w_star;
    return;
  }
  s.w_ema = lincomb(s.alpha, w_star, 1.0 - s.alpha, s.w_ema);
}

ParamVector inner_direction(InnerState& inner, const ParamVector& grad) {
  return std::visit(
      [&grad](auto& s) -> ParamVector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SgdState>) {
          return -1.0 * grad;
        } else if constexpr (std::is_same_v<T, MomentumSgdState>) {
          if (s.v.empty()) s.v = ParamVector::zeros(grad.size());
          s.v = lincomb(s.lambda, -1.0 * grad, 1.0 - s.lambda, s.v);
          return s.v;
        } else {
          return adam_direction(s, grad);
        }
      },
      inner);
}

BelayState BelayState::init(BelayParams params, InnerState inner,
                            const ParamVector& w0) {
  BelayState s;
  s.params = validated(params);
  s.inner = std::move(inner);
  s.osc = OscillatorState::at_rest(w0, w0);
  return s;
}

void belay_step(BelayState& s, const ObjectiveFunction& objective,
                std::optional<double> forced_alpha) {
  const BelayParams& p = s.params;
  OscillatorState& o = s.osc;

  const ParamVector grad = objective.gradient(o.w1);
  const ParamVector g = inner_direction(s.inner, grad);
  const ParamVector w_star = axpy(p.eta, g, o.w1);

  const double alpha = forced_alpha.value_or(p.alpha());
  const double beta = p.beta();
  const double mom1_coeff = 1.0 - p.c1 / (2.0 * p.m1);
  const double mom2_coeff = 1.0 - p.c2 / (2.0 * p.m2);

  ParamVector w1_next =
      axpy(mom1_coeff, o.v1, lincomb(alpha, w_star, 1.0 - alpha, o.w2));
  ParamVector w2_next =
      axpy(mom2_coeff, o.v2, lincomb(beta, o.w2, 1.0 - beta, o.w1));

  // Velocity updates read the pre-update positions.
  const ParamVector gap = o.w2 - o.w1;
  ParamVector dv1 = axpy(p.eta / (2.0 * alpha), g,
                         axpy(-(p.c1 / p.m1), o.v1, (p.k / p.m1) * gap));
  ParamVector dv2 = axpy(-(p.c2 / p.m2), o.v2, (-(p.k / p.m2)) * gap);

  o.v1 = o.v1 + dv1;
  o.v2 = o.v2 + dv2;
  o.w1 = std::move(w1_next);
  o.w2 = std::move(w2_next);
  o.t += 1;
}

// =============================================================================
// Run loop
// =============================================================================

namespace {

enum class MethodKind {
  kSgd,
  kMomentumSgd,
  kAdam,
  kEmaSgd,
  kEmaAdam,
  kBelaySgd,
  kBelayAdam,
};

MethodKind parse_method(const std::string& id) {
  if (id == "sgd") return MethodKind::kSgd;
  if (id == "momentum_sgd") return MethodKind::kMomentumSgd;
  if (id == "adam") return MethodKind::kAdam;
  if (id == "ema_sgd") return MethodKind::kEmaSgd;
  if (id == "ema_adam") return MethodKind::kEmaAdam;
  if (id == "belay_sgd") return MethodKind::kBelaySgd;
  if (id == "belay_adam") return MethodKind::kBelayAdam;
  throw ConfigError("unknown method identifier: " + id);
}

bool uses_belay(MethodKind k) {
  return k == MethodKind::kBelaySgd || k == MethodKind::kBelayAdam;
}

}  // namespace

const std::vector<std::string>& method_ids() {
  static const std::vector<std::string> ids{
      "sgd",     "momentum_sgd", "adam",      "ema_sgd",
      "ema_adam", "belay_sgd",   "belay_adam"};
  return ids;
}

bool known_method(const std::string& id) {
  for (const auto& known : method_ids()) {
    if (known == id) return true;
  }
  return false;
}

std::vector<TrajectoryRecord> run_optimizer(const std::string& method,
                                            const ObjectiveFunction& objective,
                                            const ParamVector& w0,
                                            std::int64_t steps,
                                            const MethodConfig& config) {
  const MethodKind kind = parse_method(method);
  if (steps < 1) throw ConfigError("steps must be >= 1");
  if (w0.size() != objective.dimension) {
    throw ConfigError("start point dimension does not match objective");
  }
  const std::size_t dim = w0.size();

  SgdState sgd{config.lr};
  MomentumSgdState momentum{config.lr, config.lambda, ParamVector::zeros(dim)};
  AdamState adam = AdamState::init(config.lr, config.beta1, config.beta2,
                                   config.eps, dim);
  EmaState ema{config.ema_alpha, w0};
  BelayState bel;
  if (uses_belay(kind)) {
    BelayParams bp = config.belay;
    bp.eta = config.lr;
    InnerState inner = kind == MethodKind::kBelaySgd
                           ? InnerState(SgdState{config.lr})
                           : InnerState(AdamState::init(
                                 config.lr, config.beta1, config.beta2,
                                 config.eps, dim));
    bel = BelayState::init(bp, std::move(inner), w0);
  }

  ParamVector w = w0;
  std::vector<TrajectoryRecord> records;
  records.reserve(static_cast<std::size_t>(steps));

  for (std::int64_t step = 1; step <= steps; ++step) {
    switch (kind) {
      case MethodKind::kSgd:
        w = sgd_step(sgd, w, objective.gradient(w));
        break;
      case MethodKind::kMomentumSgd:
        w = momentum_sgd_step(momentum, w, -1.0 * objective.gradient(w));
        break;
      case MethodKind::kAdam:
        w = adam_step(adam, w, objective.gradient(w));
        break;
      case MethodKind::kEmaSgd:
        w = sgd_step(sgd, w, objective.gradient(w));
        ema_update(ema, w);
        break;
      case MethodKind::kEmaAdam:
        w = adam_step(adam, w, objective.gradient(w));
        ema_update(ema, w);
        break;
      case MethodKind::kBelaySgd:
      case MethodKind::kBelayAdam:
        belay_step(bel, objective);
        break;
    }

    TrajectoryRecord rec;
    rec.step = step;
    bool bad_state = false;
    if (uses_belay(kind)) {
      rec.w1 = bel.osc.w1;
      rec.w2 = bel.osc.w2;
      bad_state = state_diverged(bel.osc);
    } else {
      rec.w1 = w;
      const bool is_ema =
          kind == MethodKind::kEmaSgd || kind == MethodKind::kEmaAdam;
      rec.w2 = is_ema ? ema.w_ema : w;
      bad_state = !rec.w1.all_finite() || !rec.w2.all_finite() ||
                  norm(rec.w1) > kDivergenceNormCutoff;
    }
    rec.f_w1 = objective.value(rec.w1);
    rec.f_w2 = objective.value(rec.w2);
    rec.grad_norm = norm(objective.gradient(rec.w1));
    rec.diverged = bad_state || !std::isfinite(rec.f_w1) ||
                   !std::isfinite(rec.f_w2) || !std::isfinite(rec.grad_norm);
    records.push_back(std::move(rec));
    if (records.back().diverged) break;
  }
  return records;
}

}  // namespace belay::optim
