#include "belay/validate.hpp"

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "belay/harness.hpp"
#include "belay/optim.hpp"
#include "belay/physics.hpp"
#include "belay/testbed.hpp"

namespace belay::validate {
namespace {

bool bitwise_equal(const ParamVector& a, const ParamVector& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

double max_abs_diff(const ParamVector& a, const ParamVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::fabs(a[i] - b[i]));
  }
  return worst;
}

std::string fmt(double x) { return harness::format_double(x); }

}  // namespace

double euler_closed_form_max_error(double k, double m, double delta, double w0,
                                   double t_end, double dt) {
  // Particle 2 pinned at the origin by a huge mass; its drift over the run is
  // below double precision relative to particle 1's motion.
  BelayParams p;
  p.k = k;
  p.m1 = m;
  p.c1 = 2.0 * delta * m;
  p.m2 = 1e30;
  p.c2 = 0.0;
  p.eta = 1.0;
  p.dt = dt;
  p = validated(p);

  const auto closed =
      physics::make_closed_form(ParamVector{w0}, k, m, delta);
  OscillatorState s =
      OscillatorState::at_rest(ParamVector{w0}, ParamVector{0.0});
  const ParamVector no_force{0.0};

  const auto steps = static_cast<std::int64_t>(std::llround(t_end / dt));
  double worst = 0.0;
  for (std::int64_t i = 1; i <= steps; ++i) {
    s = physics::euler_two_mass_step(s, p, no_force);
    const double t = static_cast<double>(i) * dt;
    const ParamVector ref = physics::overdamped_position(closed, t);
    worst = std::max(worst, std::fabs(s.w1[0] - ref[0]));
  }
  return worst;
}

double schedule_contraction(double k0, double t0, double t_horizon, double m,
                            double delta) {
  const double k = physics::spring_constant_schedule({k0, t0, t_horizon});
  const ParamVector w0{1.0};
  const auto closed = physics::make_closed_form(w0, k, m, delta);
  return norm(physics::overdamped_position(closed, t_horizon)) / norm(w0);
}

bool euler_swap_symmetric(int steps) {
  BelayParams p;
  p.k = 0.8;
  p.m1 = 1.3;
  p.m2 = 2.6;
  p.c1 = 0.7;
  p.c2 = 1.9;
  p.eta = 1.0;
  p.dt = 0.01;
  p = validated(p);
  BelayParams q = p;
  std::swap(q.m1, q.m2);
  std::swap(q.c1, q.c2);
  q = validated(q);

  OscillatorState a;
  a.w1 = ParamVector{0.9, -0.4};
  a.v1 = ParamVector{0.1, 0.0};
  a.w2 = ParamVector{-0.3, 0.2};
  a.v2 = ParamVector{-0.05, 0.2};
  OscillatorState b;
  b.w1 = a.w2;
  b.v1 = a.v2;
  b.w2 = a.w1;
  b.v2 = a.v1;

  const ParamVector no_force = ParamVector::zeros(2);
  for (int i = 0; i < steps; ++i) {
    a = physics::euler_two_mass_step(a, p, no_force);
    b = physics::euler_two_mass_step(b, q, no_force);
    if (!bitwise_equal(a.w1, b.w2) || !bitwise_equal(a.w2, b.w1) ||
        !bitwise_equal(a.v1, b.v2) || !bitwise_equal(a.v2, b.v1)) {
      return false;
    }
  }
  return true;
}

bool energy_non_increasing(double dt, int steps, double* max_uptick) {
  BelayParams p;
  p.k = 1.0;
  p.m1 = 1.0;
  p.m2 = 2.0;
  p.c1 = 2.5;
  p.c2 = 3.0;
  p.eta = 1.0;
  p.dt = dt;
  p = validated(p);

  OscillatorState s;
  s.w1 = ParamVector{1.0, -0.5};
  s.v1 = ParamVector{0.3, -0.1};
  s.w2 = ParamVector{-0.5, 0.25};
  s.v2 = ParamVector{-0.2, 0.15};

  const auto energy = [&p](const OscillatorState& st) {
    const ParamVector gap = st.w1 - st.w2;
    return 0.5 * p.m1 * dot(st.v1, st.v1) + 0.5 * p.m2 * dot(st.v2, st.v2) +
           0.5 * p.k * dot(gap, gap);
  };

  const ParamVector no_force = ParamVector::zeros(2);
  double prev = energy(s);
  double worst = 0.0;
  bool ok = true;
  for (int i = 0; i < steps; ++i) {
    s = physics::euler_two_mass_step(s, p, no_force);
    const double e = energy(s);
    if (e > prev) {
      ok = false;
      worst = std::max(worst, (e - prev) / std::max(prev, 1e-300));
    }
    prev = e;
  }
  if (max_uptick != nullptr) *max_uptick = worst;
  return ok;
}

double ema_limit_max_deviation(const std::string& function,
                               const std::string& inner, double eta,
                               std::int64_t steps) {
  const testbed::TestFunction fn = testbed::make_test_function(function);
  const ParamVector w0 = fn.default_start;
  const bool adam_inner = inner == "adam";

  const BelayParams params = fully_damped_params(1.0, 10.0, 20.0, eta);
  optim::InnerState belay_inner =
      adam_inner ? optim::InnerState(
                       optim::AdamState::init(eta, 0.9, 0.999, 1e-8, w0.size()))
                 : optim::InnerState(optim::SgdState{eta});
  optim::BelayState bel = optim::BelayState::init(params, belay_inner, w0);

  optim::SgdState bare_sgd{eta};
  optim::AdamState bare_adam =
      optim::AdamState::init(eta, 0.9, 0.999, 1e-8, w0.size());
  optim::EmaState ema{1.0 - params.beta(), w0};
  ParamVector w = w0;

  double worst = 0.0;
  for (std::int64_t t = 0; t < steps; ++t) {
    optim::belay_step(bel, fn.objective, 1.0);
    // The oscillator's w2 update reads the pre-step iterate, so the EMA
    // comparator consumes w before the bare step.
    ema_update(ema, w);
    const ParamVector grad = fn.objective.gradient(w);
    w = adam_inner ? optim::adam_step(bare_adam, w, grad)
                   : optim::sgd_step(bare_sgd, w, grad);
    worst = std::max(worst, max_abs_diff(bel.osc.w1, w));
    worst = std::max(worst, max_abs_diff(bel.osc.w2, ema.w_ema));
    if (!std::isfinite(worst)) break;
  }
  return worst;
}

MomentumLinearReport momentum_linear_check(std::uint64_t seed, int objectives,
                                           int steps) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> lam(0.1, 0.9);

  MomentumLinearReport report;
  report.gradient_identity_exact = true;

  for (int obj = 0; obj < objectives; ++obj) {
    const ParamVector a{coef(rng), coef(rng)};
    const double b = unit(rng);
    ObjectiveFunction linear;
    linear.name = "linear";
    linear.dimension = 2;
    linear.value = [a, b](const ParamVector& w) { return dot(a, w) + b; };
    linear.gradient = [a](const ParamVector&) { return a; };

    const double lambda = lam(rng);
    optim::MomentumSgdState mom{0.01, lambda, ParamVector::zeros(2)};
    ParamVector w{unit(rng), unit(rng)};

    std::vector<ParamVector> eval_points;  // iterate each gradient was read at
    for (int t = 1; t <= steps; ++t) {
      eval_points.push_back(w);
      const ParamVector dir = linear.gradient(w);
      w = optim::momentum_sgd_step(mom, w, dir);

      // Unrolled form: v(t) = sum_s lambda (1-lambda)^s grad(w(t-s)).
      ParamVector unrolled = ParamVector::zeros(2);
      ParamVector weighted_pts = ParamVector::zeros(2);
      double coeff = lambda;
      double coeff_sum = 0.0;
      for (int back = 0; back < t; ++back) {
        const ParamVector& pt = eval_points[static_cast<std::size_t>(t - 1 - back)];
        unrolled = axpy(coeff, linear.gradient(pt), unrolled);
        weighted_pts = axpy(coeff, pt, weighted_pts);
        coeff_sum += coeff;
        coeff *= 1.0 - lambda;
      }

      report.recursive_vs_unrolled =
          std::max(report.recursive_vs_unrolled, max_abs_diff(mom.v, unrolled));

      const ParamVector avg = (1.0 / coeff_sum) * weighted_pts;
      const ParamVector scaled_grad = coeff_sum * linear.gradient(avg);
      report.unrolled_vs_grad_at_avg = std::max(
          report.unrolled_vs_grad_at_avg, max_abs_diff(unrolled, scaled_grad));

      if (!bitwise_equal(linear.gradient(avg), linear.gradient(w))) {
        report.gradient_identity_exact = false;
      }
    }
  }
  return report;
}

// =============================================================================
// Suites
// =============================================================================

std::vector<CheckResult> physics_suite() {
  std::vector<CheckResult> results;

  {
    const double e1 = euler_closed_form_max_error(0.75, 1.0, 1.0, 1.0, 10.0, 0.1);
    const double e2 = euler_closed_form_max_error(0.75, 1.0, 1.0, 1.0, 10.0, 0.05);
    const double e3 = euler_closed_form_max_error(0.75, 1.0, 1.0, 1.0, 10.0, 0.025);
    const double r1 = e1 / e2;
    const double r2 = e2 / e3;
    CheckResult c;
    c.name = "euler-closed-form-convergence";
    c.pass = r1 >= 1.8 && r2 >= 1.8;
    std::ostringstream detail;
    detail << "max errors " << fmt(e1) << " / " << fmt(e2) << " / " << fmt(e3)
           << ", halving ratios " << fmt(r1) << ", " << fmt(r2)
           << " (need >= 1.8)";
    c.detail = detail.str();
    results.push_back(std::move(c));
  }

  {
    const double ref = schedule_contraction(1.0, 1e6, 1e6, 1e4, 1.0);
    CheckResult c;
    c.name = "spring-schedule-T-invariance";
    c.pass = true;
    std::ostringstream detail;
    detail << "contraction at T0 " << fmt(ref);
    for (const double t : {1e5, 1e7}) {
      const double got = schedule_contraction(1.0, 1e6, t, 1e4, 1.0);
      const double rel = std::fabs(got - ref) / ref;
      detail << ", T=" << fmt(t) << " rel dev " << fmt(rel);
      if (!(rel <= 0.05)) c.pass = false;
    }
    detail << " (need <= 0.05)";
    c.detail = detail.str();
    results.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "particle-swap-symmetry";
    c.pass = euler_swap_symmetric(500);
    c.detail = c.pass ? "mirrored trajectory bitwise identical over 500 steps"
                      : "mirrored trajectory deviates";
    results.push_back(std::move(c));
  }

  {
    double uptick = 0.0;
    CheckResult c;
    c.name = "energy-dissipation";
    c.pass = energy_non_increasing(1e-3, 20000, &uptick);
    std::ostringstream detail;
    detail << "worst per-step relative increase " << fmt(uptick);
    c.detail = detail.str();
    results.push_back(std::move(c));
  }

  return results;
}

std::vector<CheckResult> ema_limit_suite() {
  std::vector<CheckResult> results;
  struct Case {
    const char* function;
    const char* inner;
    double eta;
  };
  // Rates chosen so every pairing stays bounded over the horizon.
  const Case cases[] = {
      {"rosenbrock", "sgd", 1e-3},  {"rosenbrock", "adam", 5e-2},
      {"beale_shifted", "sgd", 1e-3}, {"beale_shifted", "adam", 5e-2},
      {"l1_aniso", "sgd", 1e-2},    {"l1_aniso", "adam", 5e-2},
      {"quad_aniso", "sgd", 1e-2},  {"quad_aniso", "adam", 5e-2},
  };
  for (const auto& cs : cases) {
    const double dev = ema_limit_max_deviation(cs.function, cs.inner, cs.eta, 1000);
    CheckResult c;
    c.name = std::string("ema-limit-") + cs.function + "-" + cs.inner;
    c.pass = dev <= 1e-12;
    c.detail = "max per-step deviation " + fmt(dev) + " (need <= 1e-12)";
    results.push_back(std::move(c));
  }
  return results;
}

std::vector<CheckResult> momentum_linear_suite() {
  const MomentumLinearReport report = momentum_linear_check(2024, 20, 50);
  std::vector<CheckResult> results;
  {
    CheckResult c;
    c.name = "momentum-recursive-vs-unrolled";
    c.pass = report.recursive_vs_unrolled <= 1e-12;
    c.detail = "max deviation " + fmt(report.recursive_vs_unrolled) +
               " (need <= 1e-12)";
    results.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "momentum-grad-at-weighted-average";
    c.pass = report.unrolled_vs_grad_at_avg <= 1e-12 &&
             report.gradient_identity_exact;
    c.detail = "max deviation " + fmt(report.unrolled_vs_grad_at_avg) +
               ", gradient identity " +
               (report.gradient_identity_exact ? "exact" : "violated");
    results.push_back(std::move(c));
  }
  return results;
}

}  // namespace belay::validate
