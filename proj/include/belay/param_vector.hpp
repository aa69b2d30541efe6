#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "belay/kernels.hpp"

namespace belay {

/// Dense parameter vector. Arithmetic runs through the active kernel table;
/// results are bit-deterministic across runs. Entries may become non-finite;
/// callers detect that with all_finite() rather than relying on exceptions.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::size_t n, double fill = 0.0) : v_(n, fill) {}
  ParamVector(std::initializer_list<double> init) : v_(init) {}

  static ParamVector zeros(std::size_t n) { return ParamVector(n, 0.0); }

  [[nodiscard]] std::size_t size() const { return v_.size(); }
  [[nodiscard]] bool empty() const { return v_.empty(); }

  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }

  double* data() { return v_.data(); }
  [[nodiscard]] const double* data() const { return v_.data(); }

  [[nodiscard]] auto begin() const { return v_.begin(); }
  [[nodiscard]] auto end() const { return v_.end(); }

  [[nodiscard]] bool all_finite() const {
    return kernels::active().all_finite(v_.data(), v_.size());
  }

  friend bool operator==(const ParamVector& a, const ParamVector& b) {
    return a.v_ == b.v_;
  }

 private:
  std::vector<double> v_;
};

namespace detail {
inline void check_same_dim(const ParamVector& a, const ParamVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch: " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}
}  // namespace detail

/// a + b
inline ParamVector operator+(const ParamVector& a, const ParamVector& b) {
  detail::check_same_dim(a, b);
  ParamVector out(a.size());
  kernels::active().add(out.data(), a.data(), b.data(), a.size());
  return out;
}

/// a - b
inline ParamVector operator-(const ParamVector& a, const ParamVector& b) {
  detail::check_same_dim(a, b);
  ParamVector out(a.size());
  kernels::active().sub(out.data(), a.data(), b.data(), a.size());
  return out;
}

/// s * a
inline ParamVector operator*(double s, const ParamVector& a) {
  ParamVector out(a.size());
  kernels::active().scale(out.data(), s, a.data(), a.size());
  return out;
}

inline ParamVector operator*(const ParamVector& a, double s) { return s * a; }

/// s * x + y
inline ParamVector axpy(double s, const ParamVector& x, const ParamVector& y) {
  detail::check_same_dim(x, y);
  ParamVector out(x.size());
  kernels::active().axpy(out.data(), s, x.data(), y.data(), x.size());
  return out;
}

/// a * x + b * y
inline ParamVector lincomb(double a, const ParamVector& x, double b,
                           const ParamVector& y) {
  detail::check_same_dim(x, y);
  ParamVector out(x.size());
  kernels::active().lincomb(out.data(), a, x.data(), b, y.data(), x.size());
  return out;
}

inline double dot(const ParamVector& a, const ParamVector& b) {
  detail::check_same_dim(a, b);
  return kernels::active().dot(a.data(), b.data(), a.size());
}

inline double norm(const ParamVector& a) {
  return kernels::nrm2(a.data(), a.size());
}

}  // namespace belay
