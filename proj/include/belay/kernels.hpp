#pragma once

#include <cstddef>
#include <string_view>

namespace belay::kernels {

// =============================================================================
// Vector kernels
// =============================================================================
//
// All dense arithmetic runs through one of these tables. `scalar_table` is the
// reference implementation; on x86-64 an AVX2 variant is selected at runtime
// when the CPU supports it. Elementwise kernels are required to be bitwise
// identical between implementations (the project is compiled with
// -ffp-contract=off and the AVX2 paths use separate mul/add, never fmadd), so
// results do not depend on which table is active. The reductions (`dot`) sum
// in lane-sliced order under AVX2 and agree with scalar only up to rounding.

struct KernelTable {
  /// dst[i] = a[i] + b[i]
  void (*add)(double* dst, const double* a, const double* b, std::size_t n);
  /// dst[i] = a[i] - b[i]
  void (*sub)(double* dst, const double* a, const double* b, std::size_t n);
  /// dst[i] = s * a[i]
  void (*scale)(double* dst, double s, const double* a, std::size_t n);
  /// dst[i] = a[i] * b[i]
  void (*mul)(double* dst, const double* a, const double* b, std::size_t n);
  /// dst[i] = s * x[i] + y[i]
  void (*axpy)(double* dst, double s, const double* x, const double* y,
               std::size_t n);
  /// dst[i] = a * x[i] + b * y[i]
  void (*lincomb)(double* dst, double a, const double* x, double b,
                  const double* y, std::size_t n);
  /// dst[i] = -(m[i] / mc) / (sqrt(v[i] / vc) + eps)
  void (*adam_dir)(double* dst, const double* m, const double* v, double mc,
                   double vc, double eps, std::size_t n);
  /// sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// true iff every entry is finite
  bool (*all_finite)(const double* a, std::size_t n);
  const char* name;
};

/// Portable reference implementation.
const KernelTable& scalar_table();

#if defined(BELAY_WITH_AVX2)
/// AVX2 implementation; call only when avx2_supported() is true.
const KernelTable& avx2_table();
/// Runtime CPU feature check.
bool avx2_supported();
#endif

/// Table picked once at first use: AVX2 when available, otherwise scalar.
/// Override with BELAY_KERNELS=scalar|avx2|auto.
const KernelTable& active();

/// Name of the active table ("scalar" or "avx2").
std::string_view active_name();

/// Euclidean norm via the active dot kernel.
double nrm2(const double* a, std::size_t n);

}  // namespace belay::kernels
