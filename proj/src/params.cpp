#include "belay/params.hpp"

#include <cmath>

#include "belay/core.hpp"

namespace belay {
namespace {

constexpr double kFullyDampedTol = 1e-12;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

std::optional<std::string> validate_params(BelayParams& p) {
  if (!positive_finite(p.k)) return "k must be positive and finite";
  if (!positive_finite(p.m1)) return "m1 must be positive and finite";
  if (!positive_finite(p.m2)) return "m2 must be positive and finite";
  if (!std::isfinite(p.c1) || p.c1 < 0.0) return "c1 must be non-negative and finite";
  if (!std::isfinite(p.c2) || p.c2 < 0.0) return "c2 must be non-negative and finite";
  if (!positive_finite(p.eta)) return "eta must be positive and finite";
  if (!positive_finite(p.dt)) return "dt must be positive and finite";
  const double a = p.alpha();
  if (!(a > 0.0 && a <= 1.0)) return "alpha = 1 - k*dt^2/(2*m1) must lie in (0, 1]";
  const double b = p.beta();
  if (!(b > 0.0 && b <= 1.0)) return "beta = 1 - k*dt^2/(2*m2) must lie in (0, 1]";
  p.fully_damped = std::fabs(p.c1 - 2.0 * p.m1 / p.dt) < kFullyDampedTol &&
                   std::fabs(p.c2 - 2.0 * p.m2 / p.dt) < kFullyDampedTol;
  return std::nullopt;
}

BelayParams validated(BelayParams p) {
  if (auto err = validate_params(p)) throw ConfigError(*err);
  return p;
}

BelayParams fully_damped_params(double k, double m1, double m2, double eta,
                                double dt) {
  BelayParams p;
  p.k = k;
  p.m1 = m1;
  p.m2 = m2;
  p.c1 = 2.0 * m1 / dt;
  p.c2 = 2.0 * m2 / dt;
  p.eta = eta;
  p.dt = dt;
  return validated(p);
}

}  // namespace belay
