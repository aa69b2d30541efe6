#include "belay/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace belay::kernels {
namespace {

const KernelTable& pick() {
  const char* env = std::getenv("BELAY_KERNELS");
  const char* mode = env != nullptr ? env : "auto";
#if defined(BELAY_WITH_AVX2)
  if (std::strcmp(mode, "avx2") == 0 && avx2_supported()) return avx2_table();
  if (std::strcmp(mode, "scalar") == 0) return scalar_table();
  if (avx2_supported()) return avx2_table();
#else
  (void)mode;
#endif
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = pick();
  return table;
}

std::string_view active_name() { return active().name; }

double nrm2(const double* a, std::size_t n) {
  return std::sqrt(active().dot(a, a, n));
}

}  // namespace belay::kernels
