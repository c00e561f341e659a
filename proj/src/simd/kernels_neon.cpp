#if defined(__aarch64__)

#include <arm_neon.h>

#include "rwlab/rng.hpp"
#include "rwlab/simd.hpp"

// NEON kernels (2 doubles / 4 uint32 per vector).  Same operation order as
// the scalar references; see kernels_scalar.cpp.

namespace rwlab {
namespace {

inline void mulhilo4(uint32x4_t x, uint32_t m, uint32x4_t& hi, uint32x4_t& lo) {
  uint32x2_t mlo = vdup_n_u32(m);
  uint64x2_t pe = vmull_u32(vget_low_u32(x), mlo);
  uint64x2_t po = vmull_u32(vget_high_u32(x), mlo);
  // pe = products of lanes 0,1 ; po = lanes 2,3
  lo = vuzp1q_u32(vreinterpretq_u32_u64(pe), vreinterpretq_u32_u64(po));
  hi = vuzp2q_u32(vreinterpretq_u32_u64(pe), vreinterpretq_u32_u64(po));
}

void weight_row_u01_neon(uint64_t key, uint32_t t, uint32_t parity, size_t n,
                         double* u) {
  const uint32_t c2w = 0x0E57D1CEu ^ (parity & 1u);
  const size_t nblocks = (n + 1) / 2;
  size_t j = 0;
  uint32_t w0[4], w1[4], w2[4], w3[4];
  for (; j + 4 <= nblocks; j += 4) {
    uint32x4_t c0 = vdupq_n_u32(t);
    const uint32_t lanes[4] = {uint32_t(j), uint32_t(j + 1), uint32_t(j + 2),
                               uint32_t(j + 3)};
    uint32x4_t c1 = vld1q_u32(lanes);
    uint32x4_t c2 = vdupq_n_u32(c2w);
    uint32x4_t c3 = vdupq_n_u32(0);
    uint32_t k0 = uint32_t(key), k1 = uint32_t(key >> 32);
    for (int round = 0; round < 10; ++round) {
      uint32x4_t hi0, lo0, hi1, lo1;
      mulhilo4(c0, detail::kPhiloxM0, hi0, lo0);
      mulhilo4(c2, detail::kPhiloxM1, hi1, lo1);
      c0 = veorq_u32(veorq_u32(hi1, c1), vdupq_n_u32(k0));
      c1 = lo1;
      c2 = veorq_u32(veorq_u32(hi0, c3), vdupq_n_u32(k1));
      c3 = lo0;
      k0 += detail::kPhiloxW0;
      k1 += detail::kPhiloxW1;
    }
    vst1q_u32(w0, c0);
    vst1q_u32(w1, c1);
    vst1q_u32(w2, c2);
    vst1q_u32(w3, c3);
    for (int b = 0; b < 4; ++b) {
      size_t site = 2 * (j + b);
      u[site] = u01_from_bits((uint64_t(w1[b]) << 32) | w0[b]);
      if (site + 1 < n) u[site + 1] = u01_from_bits((uint64_t(w3[b]) << 32) | w2[b]);
    }
  }
  for (; j < nblocks; ++j) {
    Philox4x32 b = philox_block(key, t, uint32_t(j), c2w, 0);
    u[2 * j] = u01_from_bits((uint64_t(b.c1) << 32) | b.c0);
    if (2 * j + 1 < n) u[2 * j + 1] = u01_from_bits((uint64_t(b.c3) << 32) | b.c2);
  }
}

void density_step_neon(const double* w, const double* om, size_t n, double a,
                       double b, double floor, double* out) {
  double v = a * (w[0] - w[0] * om[0]);
  out[0] = (v > floor) ? v : 0.0;
  size_t i = 1;
  const float64x2_t av = vdupq_n_f64(a);
  const float64x2_t bv = vdupq_n_f64(b);
  const float64x2_t fv = vdupq_n_f64(floor);
  for (; i + 2 <= n; i += 2) {
    float64x2_t wi = vld1q_f64(w + i);
    float64x2_t oi = vld1q_f64(om + i);
    float64x2_t wp = vld1q_f64(w + i - 1);
    float64x2_t op = vld1q_f64(om + i - 1);
    float64x2_t t1 = vmulq_f64(wi, oi);
    float64x2_t t3 = vmulq_f64(av, vsubq_f64(wi, t1));
    float64x2_t t5 = vmulq_f64(bv, vmulq_f64(wp, op));
    float64x2_t r = vaddq_f64(t3, t5);
    uint64x2_t mask = vcgtq_f64(r, fv);
    r = vreinterpretq_f64_u64(vandq_u64(vreinterpretq_u64_f64(r), mask));
    vst1q_f64(out + i, r);
  }
  for (; i < n; ++i) {
    v = a * (w[i] - w[i] * om[i]) + b * (w[i - 1] * om[i - 1]);
    out[i] = (v > floor) ? v : 0.0;
  }
  v = b * (w[n - 1] * om[n - 1]);
  out[n] = (v > floor) ? v : 0.0;
}

// Reductions: two vector accumulators emulate the four-way interleave.
double dot_neon(const double* f, const double* w, size_t n) {
  float64x2_t a01 = vdupq_n_f64(0), a23 = vdupq_n_f64(0);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a01 = vaddq_f64(a01, vmulq_f64(vld1q_f64(f + i), vld1q_f64(w + i)));
    a23 = vaddq_f64(a23, vmulq_f64(vld1q_f64(f + i + 2), vld1q_f64(w + i + 2)));
  }
  double tail = 0;
  for (; i < n; ++i) tail += f[i] * w[i];
  return ((vgetq_lane_f64(a01, 0) + vgetq_lane_f64(a01, 1)) +
          (vgetq_lane_f64(a23, 0) + vgetq_lane_f64(a23, 1))) +
         tail;
}

double dot_sq_neon(const double* f, const double* w, size_t n) {
  float64x2_t a01 = vdupq_n_f64(0), a23 = vdupq_n_f64(0);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float64x2_t w0 = vld1q_f64(w + i), w2 = vld1q_f64(w + i + 2);
    a01 = vaddq_f64(a01, vmulq_f64(vld1q_f64(f + i), vmulq_f64(w0, w0)));
    a23 = vaddq_f64(a23, vmulq_f64(vld1q_f64(f + i + 2), vmulq_f64(w2, w2)));
  }
  double tail = 0;
  for (; i < n; ++i) tail += f[i] * (w[i] * w[i]);
  return ((vgetq_lane_f64(a01, 0) + vgetq_lane_f64(a01, 1)) +
          (vgetq_lane_f64(a23, 0) + vgetq_lane_f64(a23, 1))) +
         tail;
}

double sum_neon(const double* w, size_t n) {
  float64x2_t a01 = vdupq_n_f64(0), a23 = vdupq_n_f64(0);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a01 = vaddq_f64(a01, vld1q_f64(w + i));
    a23 = vaddq_f64(a23, vld1q_f64(w + i + 2));
  }
  double tail = 0;
  for (; i < n; ++i) tail += w[i];
  return ((vgetq_lane_f64(a01, 0) + vgetq_lane_f64(a01, 1)) +
          (vgetq_lane_f64(a23, 0) + vgetq_lane_f64(a23, 1))) +
         tail;
}

}  // namespace

const Kernels& neon_kernels() {
  static const Kernels k = {weight_row_u01_neon, density_step_neon, dot_neon,
                            dot_sq_neon,         sum_neon,          "neon"};
  return k;
}

}  // namespace rwlab

#endif  // __aarch64__
