#pragma once

#include <cstdint>

// Counter-based random number generation (Philox4x32-10).
//
// Every random quantity in this project is a pure function of
// (key, counter).  Keys are 64-bit stream identifiers derived from the
// experiment seed; counters encode lattice coordinates, step indices or
// draw indices.  This gives O(1)-memory environments that can be queried
// in any order by any thread with bit-identical results.

namespace rwlab {

inline uint64_t splitmix64(uint64_t& s) {
  s += 0x9E3779B97F4A7C15ull;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derive an independent stream key from a base seed and up to two salts.
inline uint64_t derive_key(uint64_t seed, uint64_t salt_a, uint64_t salt_b = 0) {
  uint64_t s = seed;
  uint64_t k = splitmix64(s);
  s = k ^ (salt_a * 0xC2B2AE3D27D4EB4Full + 0x165667B19E3779F9ull);
  k = splitmix64(s);
  s = k ^ (salt_b * 0x9E3779B97F4A7C15ull + 0x27D4EB2F165667C5ull);
  return splitmix64(s);
}

struct Philox4x32 {
  uint32_t c0, c1, c2, c3;  // output words after operator()
};

namespace detail {
constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(uint32_t& c0, uint32_t& c1, uint32_t& c2, uint32_t& c3,
                         uint32_t k0, uint32_t k1) {
  uint64_t p0 = uint64_t(kPhiloxM0) * c0;
  uint64_t p1 = uint64_t(kPhiloxM1) * c2;
  uint32_t hi0 = uint32_t(p0 >> 32), lo0 = uint32_t(p0);
  uint32_t hi1 = uint32_t(p1 >> 32), lo1 = uint32_t(p1);
  c0 = hi1 ^ c1 ^ k0;
  c1 = lo1;
  c2 = hi0 ^ c3 ^ k1;
  c3 = lo0;
}
}  // namespace detail

// One 128-bit block of Philox4x32-10.
inline Philox4x32 philox_block(uint64_t key, uint32_t c0, uint32_t c1, uint32_t c2,
                               uint32_t c3) {
  uint32_t k0 = uint32_t(key), k1 = uint32_t(key >> 32);
  for (int round = 0; round < 10; ++round) {
    detail::philox_round(c0, c1, c2, c3, k0, k1);
    k0 += detail::kPhiloxW0;
    k1 += detail::kPhiloxW1;
  }
  return {c0, c1, c2, c3};
}

inline double u01_from_bits(uint64_t bits) {
  return double(bits >> 11) * 0x1.0p-53;  // [0,1)
}

// Uniform double keyed by two 64-bit counter words.
inline double philox_u01(uint64_t key, uint64_t ca, uint64_t cb) {
  Philox4x32 b = philox_block(key, uint32_t(ca), uint32_t(ca >> 32), uint32_t(cb),
                              uint32_t(cb >> 32));
  return u01_from_bits((uint64_t(b.c1) << 32) | b.c0);
}

// Two independent uniforms from one block (used for Box-Muller pairs and
// paired lattice sites).
inline void philox_u01x2(uint64_t key, uint64_t ca, uint64_t cb, double& u0, double& u1) {
  Philox4x32 b = philox_block(key, uint32_t(ca), uint32_t(ca >> 32), uint32_t(cb),
                              uint32_t(cb >> 32));
  u0 = u01_from_bits((uint64_t(b.c1) << 32) | b.c0);
  u1 = u01_from_bits((uint64_t(b.c3) << 32) | b.c2);
}

// Counter purposes; kept distinct so streams never collide.
enum : uint64_t {
  CTR_ENV_WEIGHT = 0x01,
  CTR_KPOINT_OMEGA = 0x02,
  CTR_KPOINT_MOVE = 0x03,
  CTR_EXPERIMENT_U = 0x04,
  CTR_BRIDGE_NORMAL = 0x05,
  CTR_CHAOS_OMEGA = 0x06,
};

}  // namespace rwlab
