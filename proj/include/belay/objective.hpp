#pragma once

#include <functional>
#include <string>

#include "belay/param_vector.hpp"

namespace belay {

/// A differentiable objective. Both callables must be pure: the same input
/// always produces the same output bits.
struct ObjectiveFunction {
  std::string name;
  std::size_t dimension = 0;
  std::function<double(const ParamVector&)> value;
  std::function<ParamVector(const ParamVector&)> gradient;
};

}  // namespace belay
