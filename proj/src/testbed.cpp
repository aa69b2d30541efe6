#include "belay/testbed.hpp"

#include <cmath>

#include "belay/core.hpp"

namespace belay::testbed {
namespace {

void require_2d(const ParamVector& w) {
  if (w.size() != 2) {
    throw std::invalid_argument("test functions are 2-dimensional");
  }
}

double sign(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return -1.0;
  return 0.0;
}

}  // namespace

std::pair<double, ParamVector> rosenbrock(const ParamVector& w) {
  require_2d(w);
  constexpr double b = 100.0;
  const double x = w[0];
  const double y = w[1];
  const double residual = x - y * y;
  const double value = x * x + b * residual * residual;
  ParamVector grad{2.0 * x + 2.0 * b * residual,
                   -4.0 * b * y * residual};
  return {value, grad};
}

std::pair<double, ParamVector> beale_shifted(const ParamVector& w) {
  require_2d(w);
  const double x = w[0] + 3.0;
  const double y = w[1] + 0.5;
  const double y2 = y * y;
  const double y3 = y2 * y;
  const double t1 = 1.5 - x + x * y;
  const double t2 = 2.25 - x + x * y2;
  const double t3 = 2.625 - x + x * y3;
  const double value = t1 * t1 + t2 * t2 + t3 * t3;
  const double gx =
      2.0 * t1 * (y - 1.0) + 2.0 * t2 * (y2 - 1.0) + 2.0 * t3 * (y3 - 1.0);
  const double gy = 2.0 * t1 * x + 4.0 * t2 * x * y + 6.0 * t3 * x * y2;
  return {value, ParamVector{gx, gy}};
}

std::pair<double, ParamVector> l1_aniso(const ParamVector& w) {
  require_2d(w);
  const double value = std::fabs(w[0]) / 10.0 + std::fabs(w[1]);
  ParamVector grad{sign(w[0]) / 10.0, sign(w[1])};
  return {value, grad};
}

std::pair<double, ParamVector> quad_aniso(const ParamVector& w) {
  require_2d(w);
  const double x = w[0];
  const double y = w[1];
  const double u = x + y / 10.0;
  const double v = x - y / 10.0;
  const double value = (u * u + v * v) / 10.0;
  ParamVector grad{(2.0 * u + 2.0 * v) / 10.0,
                   (2.0 * u - 2.0 * v) / 100.0};
  return {value, grad};
}

const std::vector<std::string>& test_function_names() {
  static const std::vector<std::string> names{"rosenbrock", "beale_shifted",
                                              "l1_aniso", "quad_aniso"};
  return names;
}

namespace {

template <std::pair<double, ParamVector> (*Fn)(const ParamVector&)>
ObjectiveFunction wrap(std::string name) {
  ObjectiveFunction f;
  f.name = std::move(name);
  f.dimension = 2;
  f.value = [](const ParamVector& w) { return Fn(w).first; };
  f.gradient = [](const ParamVector& w) { return Fn(w).second; };
  return f;
}

}  // namespace

TestFunction make_test_function(std::string_view name) {
  TestFunction t;
  t.minimum = ParamVector{0.0, 0.0};
  if (name == "rosenbrock") {
    t.objective = wrap<rosenbrock>("rosenbrock");
    t.default_start = ParamVector{-1.5, 1.5};
  } else if (name == "beale_shifted") {
    t.objective = wrap<beale_shifted>("beale_shifted");
    t.default_start = ParamVector{-1.5, 1.5};
  } else if (name == "l1_aniso") {
    t.objective = wrap<l1_aniso>("l1_aniso");
    t.default_start = ParamVector{1.5, 1.5};
  } else if (name == "quad_aniso") {
    t.objective = wrap<quad_aniso>("quad_aniso");
    t.default_start = ParamVector{1.5, 1.5};
  } else {
    throw ConfigError("unknown test function: " + std::string(name));
  }
  return t;
}

}  // namespace belay::testbed
