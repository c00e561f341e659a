#include <cstdlib>
#include <cstring>

#include "rwlab/simd.hpp"

namespace rwlab {

#if defined(__x86_64__) || defined(_M_X64)
bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }
#endif

namespace {

const Kernels& select() {
  const char* force = std::getenv("RWLAB_SIMD");
  if (force != nullptr) {
    if (std::strcmp(force, "scalar") == 0) return scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
    if (std::strcmp(force, "avx2") == 0 && cpu_has_avx2()) return avx2_kernels();
#endif
#if defined(__aarch64__)
    if (std::strcmp(force, "neon") == 0) return neon_kernels();
#endif
    return scalar_kernels();
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) return avx2_kernels();
#endif
#if defined(__aarch64__)
  return neon_kernels();
#endif
  return scalar_kernels();
}

}  // namespace

const Kernels& kernels() {
  static const Kernels& k = select();
  return k;
}

}  // namespace rwlab
