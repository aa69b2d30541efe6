#include "belay/kernels.hpp"

#include <cmath>

namespace belay::kernels {
namespace {

void k_add(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

void k_sub(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}

void k_scale(double* dst, double s, const double* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = s * a[i];
}

void k_mul(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void k_axpy(double* dst, double s, const double* x, const double* y,
            std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = s * x[i] + y[i];
}

void k_lincomb(double* dst, double a, const double* x, double b,
               const double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a * x[i] + b * y[i];
}

void k_adam_dir(double* dst, const double* m, const double* v, double mc,
                double vc, double eps, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double mhat = m[i] / mc;
    const double denom = std::sqrt(v[i] / vc) + eps;
    dst[i] = -(mhat / denom);
  }
}

double k_dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

bool k_all_finite(const double* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(a[i])) return false;
  }
  return true;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{.add = k_add,
                                 .sub = k_sub,
                                 .scale = k_scale,
                                 .mul = k_mul,
                                 .axpy = k_axpy,
                                 .lincomb = k_lincomb,
                                 .adam_dir = k_adam_dir,
                                 .dot = k_dot,
                                 .all_finite = k_all_finite,
                                 .name = "scalar"};
  return table;
}

}  // namespace belay::kernels
