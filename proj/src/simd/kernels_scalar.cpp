#include "rwlab/rng.hpp"
#include "rwlab/simd.hpp"

// Scalar reference kernels.  These define the semantics the SIMD variants
// must reproduce exactly; keep the operation order in sync with
// kernels_avx2.cpp / kernels_neon.cpp.

namespace rwlab {
namespace {

void weight_row_u01_scalar(uint64_t key, uint32_t t, uint32_t parity, size_t n,
                           double* u) {
  const uint32_t c2 = 0x0E57D1CEu ^ (parity & 1u);
  size_t nblocks = (n + 1) / 2;
  for (size_t j = 0; j < nblocks; ++j) {
    Philox4x32 b = philox_block(key, t, uint32_t(j), c2, 0);
    u[2 * j] = u01_from_bits((uint64_t(b.c1) << 32) | b.c0);
    if (2 * j + 1 < n) u[2 * j + 1] = u01_from_bits((uint64_t(b.c3) << 32) | b.c2);
  }
}

void density_step_scalar(const double* w, const double* om, size_t n, double a,
                         double b, double floor, double* out) {
  double v = a * (w[0] - w[0] * om[0]);
  out[0] = (v > floor) ? v : 0.0;
  for (size_t i = 1; i < n; ++i) {
    v = a * (w[i] - w[i] * om[i]) + b * (w[i - 1] * om[i - 1]);
    out[i] = (v > floor) ? v : 0.0;
  }
  v = b * (w[n - 1] * om[n - 1]);
  out[n] = (v > floor) ? v : 0.0;
}

double dot_scalar(const double* f, const double* w, size_t n) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += f[i] * w[i];
    s1 += f[i + 1] * w[i + 1];
    s2 += f[i + 2] * w[i + 2];
    s3 += f[i + 3] * w[i + 3];
  }
  double tail = 0;
  for (; i < n; ++i) tail += f[i] * w[i];
  return ((s0 + s1) + (s2 + s3)) + tail;
}

double dot_sq_scalar(const double* f, const double* w, size_t n) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += f[i] * (w[i] * w[i]);
    s1 += f[i + 1] * (w[i + 1] * w[i + 1]);
    s2 += f[i + 2] * (w[i + 2] * w[i + 2]);
    s3 += f[i + 3] * (w[i + 3] * w[i + 3]);
  }
  double tail = 0;
  for (; i < n; ++i) tail += f[i] * (w[i] * w[i]);
  return ((s0 + s1) + (s2 + s3)) + tail;
}

double sum_scalar(const double* w, size_t n) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += w[i];
    s1 += w[i + 1];
    s2 += w[i + 2];
    s3 += w[i + 3];
  }
  double tail = 0;
  for (; i < n; ++i) tail += w[i];
  return ((s0 + s1) + (s2 + s3)) + tail;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k = {weight_row_u01_scalar, density_step_scalar, dot_scalar,
                            dot_sq_scalar,         sum_scalar,          "scalar"};
  return k;
}

}  // namespace rwlab
