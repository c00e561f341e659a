#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rwlab/rng.hpp"

namespace rwlab {

// Highest power b+c covered by the mixed-moment tables.  The k-point
// machinery needs moments up to the largest cluster size (k <= 8 here).
constexpr int kMomentMax = 8;

enum class Dist { DegenerateHalf, TwoPoint, Beta, Uniform, BernoulliHalf };

// A weight distribution nu on [0,1] plus its mixed-moment table
//   mm[b][c] = ∫ x^b (1-x)^c nu(dx),  b+c <= kMomentMax.
// `shift` > 0 turns the spec into the law of min(1, w + shift); tables and
// sampling account for the clipping.
struct EnvSpec {
  Dist kind = Dist::DegenerateHalf;
  double a = 0.0;      // two-point offset
  double alpha = 0.0;  // beta shape
  double shift = 0.0;

  double mu = 0.5;
  double sigma2 = 0.0;
  std::array<std::array<double, kMomentMax + 1>, kMomentMax + 1> mm{};

  // Inverse-CDF sampling from a uniform u in [0,1).
  double sample(double u) const;

  double moment(int b, int c) const { return mm[size_t(b)][size_t(c)]; }
  bool finite_support() const { return kind != Dist::Beta && kind != Dist::Uniform; }
  // Support atoms (finite-support kinds only), with probabilities.
  std::vector<std::pair<double, double>> atoms() const;
  std::string name() const;
};

// kind-specific parameter: two-point offset a in [0,1/2], or beta alpha > 0.
EnvSpec make_spec(Dist kind, double param = 0.0);

// rho_N = e^{N^{-1/4}} / (2 cosh N^{-1/4}).
double rho_n(double N);

// Law of min(1, w + d_N) with d_N solved (bisection, 1e-12) so that the
// mean equals rho_N.  Throws if no d in [0, 1/2] reaches rho_N.
EnvSpec skewed_spec(const EnvSpec& spec, double N);

// Mean of min(1, w + d) under `spec`; exposed for the bisection tests.
double shifted_mean(const EnvSpec& spec, double d);

// Space-time iid environment, queried as a pure function of (seed, t, y).
struct Environment {
  uint64_t seed = 0;
  EnvSpec spec;

  Environment() = default;
  Environment(uint64_t s, EnvSpec sp) : seed(s), spec(std::move(sp)) {}

  // w(t,y) for lattice time t >= 0 and site y.
  double weight(int64_t t, int64_t y) const;

  // Weights for the whole row {y0, y0+2, ..., y0+2(n-1)} at time t.
  // Bit-identical to n calls of weight(t, y0+2i).
  void weight_row(int64_t t, int64_t y0, size_t n, double* w) const;
};

}  // namespace rwlab
