#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "rwlab/rng.hpp"
#include "rwlab/simd.hpp"

// AVX2 kernels.  Elementwise arithmetic uses separate mul/add (no FMA) and
// reductions keep the four-way lane order so results match the scalar
// references bit for bit.

namespace rwlab {
namespace {

// 32x32->64 multiply of all eight lanes; returns hi and lo 32-bit parts.
inline void mulhilo8(__m256i x, uint32_t m, __m256i& hi, __m256i& lo) {
  const __m256i mv = _mm256_set1_epi32(int(m));
  __m256i pe = _mm256_mul_epu32(x, mv);                          // lanes 0,2,4,6
  __m256i po = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), mv);   // lanes 1,3,5,7
  hi = _mm256_blend_epi32(_mm256_srli_epi64(pe, 32), po, 0xAA);
  lo = _mm256_blend_epi32(pe, _mm256_slli_epi64(po, 32), 0xAA);
}

void weight_row_u01_avx2(uint64_t key, uint32_t t, uint32_t parity, size_t n,
                         double* u) {
  const uint32_t c2w = 0x0E57D1CEu ^ (parity & 1u);
  const size_t nblocks = (n + 1) / 2;
  size_t j = 0;
  alignas(32) uint32_t w0[8], w1[8], w2[8], w3[8];
  for (; j + 8 <= nblocks; j += 8) {
    __m256i c0 = _mm256_set1_epi32(int(t));
    __m256i c1 = _mm256_add_epi32(_mm256_set1_epi32(int(uint32_t(j))),
                                  _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7));
    __m256i c2 = _mm256_set1_epi32(int(c2w));
    __m256i c3 = _mm256_setzero_si256();
    uint32_t k0 = uint32_t(key), k1 = uint32_t(key >> 32);
    for (int round = 0; round < 10; ++round) {
      __m256i hi0, lo0, hi1, lo1;
      mulhilo8(c0, detail::kPhiloxM0, hi0, lo0);
      mulhilo8(c2, detail::kPhiloxM1, hi1, lo1);
      __m256i k0v = _mm256_set1_epi32(int(k0));
      __m256i k1v = _mm256_set1_epi32(int(k1));
      c0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), k0v);
      c1 = lo1;
      c2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), k1v);
      c3 = lo0;
      k0 += detail::kPhiloxW0;
      k1 += detail::kPhiloxW1;
    }
    _mm256_store_si256(reinterpret_cast<__m256i*>(w0), c0);
    _mm256_store_si256(reinterpret_cast<__m256i*>(w1), c1);
    _mm256_store_si256(reinterpret_cast<__m256i*>(w2), c2);
    _mm256_store_si256(reinterpret_cast<__m256i*>(w3), c3);
    for (int b = 0; b < 8; ++b) {
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

void density_step_avx2(const double* w, const double* om, size_t n, double a,
                       double b, double floor, double* out) {
  double v = a * (w[0] - w[0] * om[0]);
  out[0] = (v > floor) ? v : 0.0;
  size_t i = 1;
  const __m256d av = _mm256_set1_pd(a);
  const __m256d bv = _mm256_set1_pd(b);
  const __m256d fv = _mm256_set1_pd(floor);
  for (; i + 4 <= n; i += 4) {
    __m256d wi = _mm256_loadu_pd(w + i);
    __m256d oi = _mm256_loadu_pd(om + i);
    __m256d wp = _mm256_loadu_pd(w + i - 1);
    __m256d op = _mm256_loadu_pd(om + i - 1);
    __m256d t1 = _mm256_mul_pd(wi, oi);
    __m256d t3 = _mm256_mul_pd(av, _mm256_sub_pd(wi, t1));
    __m256d t5 = _mm256_mul_pd(bv, _mm256_mul_pd(wp, op));
    __m256d r = _mm256_add_pd(t3, t5);
    r = _mm256_and_pd(r, _mm256_cmp_pd(r, fv, _CMP_GT_OQ));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) {
    v = a * (w[i] - w[i] * om[i]) + b * (w[i - 1] * om[i - 1]);
    out[i] = (v > floor) ? v : 0.0;
  }
  v = b * (w[n - 1] * om[n - 1]);
  out[n] = (v > floor) ? v : 0.0;
}

inline double reduce4(__m256d acc, double tail) {
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  return ((s[0] + s[1]) + (s[2] + s[3])) + tail;
}

double dot_avx2(const double* f, const double* w, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(f + i), _mm256_loadu_pd(w + i)));
  double tail = 0;
  for (; i < n; ++i) tail += f[i] * w[i];
  return reduce4(acc, tail);
}

double dot_sq_avx2(const double* f, const double* w, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d wv = _mm256_loadu_pd(w + i);
    acc = _mm256_add_pd(
        acc, _mm256_mul_pd(_mm256_loadu_pd(f + i), _mm256_mul_pd(wv, wv)));
  }
  double tail = 0;
  for (; i < n; ++i) tail += f[i] * (w[i] * w[i]);
  return reduce4(acc, tail);
}

double sum_avx2(const double* w, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(w + i));
  double tail = 0;
  for (; i < n; ++i) tail += w[i];
  return reduce4(acc, tail);
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels k = {weight_row_u01_avx2, density_step_avx2, dot_avx2,
                            dot_sq_avx2,         sum_avx2,          "avx2"};
  return k;
}

}  // namespace rwlab

#endif  // x86-64
