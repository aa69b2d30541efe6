#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "belay/objective.hpp"
#include "belay/param_vector.hpp"

namespace belay::testbed {

/// Value and gradient of f(x, y) = x^2 + b (x - y^2)^2 with b = 100.
/// Global minimum at (0, 0).
std::pair<double, ParamVector> rosenbrock(const ParamVector& w);

/// Beale's function translated so the minimum sits at the origin:
/// the standard three-term Beale evaluated at (x + 3, y + 0.5).
std::pair<double, ParamVector> beale_shifted(const ParamVector& w);

/// f(x, y) = |x|/10 + |y|. Subgradient 0 on a coordinate exactly at its kink.
std::pair<double, ParamVector> l1_aniso(const ParamVector& w);

/// f(x, y) = ((x + y/10)^2 + (x - y/10)^2) / 10 = x^2/5 + y^2/500.
/// Hessian condition number 100.
std::pair<double, ParamVector> quad_aniso(const ParamVector& w);

/// A registered objective with its known minimizer and default start point.
struct TestFunction {
  ObjectiveFunction objective;
  ParamVector minimum;
  ParamVector default_start;
};

/// Registered names: rosenbrock, beale_shifted, l1_aniso, quad_aniso.
const std::vector<std::string>& test_function_names();

/// Throws ConfigError for an unregistered name.
TestFunction make_test_function(std::string_view name);

}  // namespace belay::testbed
