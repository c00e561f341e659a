#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "rwlab/rng.hpp"
#include "rwlab/simd.hpp"

// The SIMD variants must agree with the scalar references bit for bit:
// same per-element rounding for the stencils, same fixed accumulation
// order for the reductions, and integer-exact hashing.

using namespace rwlab;

namespace {

std::vector<double> random_doubles(size_t n, uint64_t key, double scale = 1.0) {
  std::vector<double> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = scale * philox_u01(key, i, 7);
  return v;
}

void check_variant(const Kernels& ref, const Kernels& alt) {
  const size_t sizes[] = {1, 2, 3, 5, 8, 15, 16, 17, 64, 257, 1023};
  for (size_t n : sizes) {
    auto w = random_doubles(n, 11);
    auto om = random_doubles(n, 22);
    auto f = random_doubles(n, 33, 2.0);

    std::vector<double> out_a(n + 1), out_b(n + 1);
    ref.density_step(w.data(), om.data(), n, 0.75, 1.25, 1e-290, out_a.data());
    alt.density_step(w.data(), om.data(), n, 0.75, 1.25, 1e-290, out_b.data());
    CHECK(std::memcmp(out_a.data(), out_b.data(), (n + 1) * sizeof(double)) == 0);

    CHECK(ref.dot(f.data(), w.data(), n) == alt.dot(f.data(), w.data(), n));
    CHECK(ref.dot_sq(f.data(), w.data(), n) == alt.dot_sq(f.data(), w.data(), n));
    CHECK(ref.sum(w.data(), n) == alt.sum(w.data(), n));

    std::vector<double> u_a(n), u_b(n);
    ref.weight_row_u01(0x1234abcd5678ef90ull, 42, 0, n, u_a.data());
    alt.weight_row_u01(0x1234abcd5678ef90ull, 42, 0, n, u_b.data());
    CHECK(std::memcmp(u_a.data(), u_b.data(), n * sizeof(double)) == 0);
    ref.weight_row_u01(3, 1, 1, n, u_a.data());
    alt.weight_row_u01(3, 1, 1, n, u_b.data());
    CHECK(std::memcmp(u_a.data(), u_b.data(), n * sizeof(double)) == 0);
  }
}

}  // namespace

TEST_CASE("runtime-selected kernels match the scalar references exactly") {
  const Kernels& k = kernels();
  INFO("selected: ", k.name);
  check_variant(scalar_kernels(), k);
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernels match the scalar references exactly") {
  if (!cpu_has_avx2()) return;
  check_variant(scalar_kernels(), avx2_kernels());
}
#endif

TEST_CASE("weight rows are pure functions of (key, t, parity, i)") {
  std::vector<double> u1(100), u2(100);
  scalar_kernels().weight_row_u01(99, 7, 1, 100, u1.data());
  scalar_kernels().weight_row_u01(99, 7, 1, 100, u2.data());
  CHECK(u1 == u2);
  scalar_kernels().weight_row_u01(99, 8, 1, 100, u2.data());
  CHECK(u1 != u2);
}

TEST_CASE("philox passes a coarse moment sanity check") {
  // 10^6 uniforms: mean and second moment within 4 standard errors.
  const size_t n = 1000000;
  double s = 0, s2 = 0;
  for (size_t i = 0; i < n; ++i) {
    double u = philox_u01(0xfeedface, i, 0);
    s += u;
    s2 += u * u;
  }
  double mean = s / double(n);
  double m2 = s2 / double(n);
  CHECK(std::fabs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / double(n)));
  // Var(u^2) = E[u^4] - (E[u^2])^2 = 1/5 - 1/9 = 4/45
  CHECK(std::fabs(m2 - 1.0 / 3.0) < 4.0 * std::sqrt(4.0 / 45.0 / double(n)));
}
