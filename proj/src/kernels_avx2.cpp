#include "belay/kernels.hpp"

#if defined(BELAY_WITH_AVX2)

#include <immintrin.h>

#include <cmath>

// Each vector loop processes 4 doubles per iteration; the remainder runs the
// same scalar expressions as the reference table. Multiplies and adds stay
// separate (no fmadd) so every elementwise kernel is bit-identical to scalar.

namespace belay::kernels {
namespace {

void k_add(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i,
                     _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] + b[i];
}

void k_sub(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i,
                     _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] - b[i];
}

void k_scale(double* dst, double s, const double* a, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(vs, _mm256_loadu_pd(a + i)));
  }
  for (; i < n; ++i) dst[i] = s * a[i];
}

void k_mul(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i,
                     _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void k_axpy(double* dst, double s, const double* x, const double* y,
            std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(vs, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(dst + i, _mm256_add_pd(prod, _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) dst[i] = s * x[i] + y[i];
}

void k_lincomb(double* dst, double a, const double* x, double b,
               const double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    const __m256d by = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(dst + i, _mm256_add_pd(ax, by));
  }
  for (; i < n; ++i) dst[i] = a * x[i] + b * y[i];
}

void k_adam_dir(double* dst, const double* m, const double* v, double mc,
                double vc, double eps, std::size_t n) {
  const __m256d vmc = _mm256_set1_pd(mc);
  const __m256d vvc = _mm256_set1_pd(vc);
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mhat = _mm256_div_pd(_mm256_loadu_pd(m + i), vmc);
    const __m256d vhat = _mm256_div_pd(_mm256_loadu_pd(v + i), vvc);
    const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(vhat), veps);
    const __m256d q = _mm256_div_pd(mhat, denom);
    _mm256_storeu_pd(dst + i, _mm256_xor_pd(q, sign_mask));
  }
  for (; i < n; ++i) {
    const double mhat = m[i] / mc;
    const double denom = std::sqrt(v[i] / vc) + eps;
    dst[i] = -(mhat / denom);
  }
}

double k_dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod =
        _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, prod);
  }
  // Fixed lane order: (l0 + l2) + (l1 + l3), then the scalar tail.
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

bool k_all_finite(const double* a, std::size_t n) {
  const __m256d abs_mask = _mm256_castsi256_pd(
      _mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d inf = _mm256_set1_pd(__builtin_inf());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mag = _mm256_and_pd(_mm256_loadu_pd(a + i), abs_mask);
    const __m256d lt = _mm256_cmp_pd(mag, inf, _CMP_LT_OQ);
    if (_mm256_movemask_pd(lt) != 0xf) return false;
  }
  for (; i < n; ++i) {
    if (!std::isfinite(a[i])) return false;
  }
  return true;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{.add = k_add,
                                 .sub = k_sub,
                                 .scale = k_scale,
                                 .mul = k_mul,
                                 .axpy = k_axpy,
                                 .lincomb = k_lincomb,
                                 .adam_dir = k_adam_dir,
                                 .dot = k_dot,
                                 .all_finite = k_all_finite,
                                 .name = "avx2"};
  return table;
}

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

}  // namespace belay::kernels

#endif  // BELAY_WITH_AVX2
