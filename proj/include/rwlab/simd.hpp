#pragma once

#include <cstddef>
#include <cstdint>

// Runtime-dispatched inner-loop kernels.
//
// Each kernel has a scalar reference implementation and SIMD variants
// (AVX2 on x86-64, NEON on aarch64) selected once at startup.  The SIMD
// variants are bit-identical to the scalar references: elementwise kernels
// use the same per-element operation order (no FMA contraction), and
// reductions use a fixed four-way interleaved accumulation in both paths.
// tests/test_simd.cpp asserts exact equality.

namespace rwlab {

struct Kernels {
  // Uniform doubles for one lattice row: u[i] is a pure function of
  // (key, t, parity, i).  Sites are paired two per Philox block.
  void (*weight_row_u01)(uint64_t key, uint32_t t, uint32_t parity, size_t n,
                         double* u);

  // One step of the two-term density recursion,
  //   out[i] = a*(w[i] - w[i]*om[i]) + b*(w[i-1]*om[i-1]),   i = 0..n,
  // with w[-1] = w[n] = 0.  Results below `floor` are clamped to zero
  // (keeps the far tails out of the denormal range).
  void (*density_step)(const double* w, const double* om, size_t n, double a,
                       double b, double floor, double* out);

  // sum_i f[i]*w[i], four-way interleaved accumulation.
  double (*dot)(const double* f, const double* w, size_t n);

  // sum_i f[i]*(w[i]*w[i]), same accumulation order.
  double (*dot_sq)(const double* f, const double* w, size_t n);

  // sum_i w[i], same accumulation order.
  double (*sum)(const double* w, size_t n);

  const char* name;
};

// Selected at first use: AVX2/NEON when the CPU supports it, otherwise
// scalar.  Set RWLAB_SIMD=scalar (or avx2/neon) to override.
const Kernels& kernels();

const Kernels& scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
const Kernels& avx2_kernels();
bool cpu_has_avx2();
#endif
#if defined(__aarch64__)
const Kernels& neon_kernels();
#endif

}  // namespace rwlab
