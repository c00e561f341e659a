#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rwlab {

// A reference number with an error bar and the method that produced it.
struct ReferenceValue {
  double value = 0;
  double error = 0;  // quadrature bound or Monte Carlo standard error
  std::string method;
};

// Standard heat kernel p_t(x) = (2 pi t)^{-1/2} e^{-x^2/2t}; t must be > 0.
double heat_kernel(double t, double x);

// Environmental variance coefficient gamma = sqrt(8 s2 / (1 - 4 s2));
// rejects s2 >= 1/4 (degenerate limit).
double gamma_coeff(double sigma2);

// Moment of the multiplicative SHE with delta_0 data via bridge local
// times:
//   E[prod_i U_t(x_i)] = prod_i p_t(x_i) *
//       E[exp((gamma^2/2) sum_{i<j} L_0^{B^i-B^j}(t))],
// with independent bridges 0 -> x_i on [0,t].  Pairwise local times use the
// band-occupation estimator (difference process has quadratic variation
// rate 2) with Richardson extrapolation in the band width.
struct BridgeMcParams {
  int64_t paths = 20000;
  int64_t steps = 2048;     // time grid
  double delta = 0.25;      // outer band; inner band delta/2
  uint64_t seed = 1;
  bool downcrossing_check = false;  // optional second estimator
};
ReferenceValue she_moment_bridge_mc(int k, double t, const std::vector<double>& x,
                                    double gamma, const BridgeMcParams& prm);

// Two-point moment by the exact double contour integral
//   alpha^{-2} oint oint (z2-z1)/(z2-z1-1)
//       e^{(t/2 alpha^2)(z1^2+z2^2) - (x z1 + y z2)/alpha} dz1 dz2 / (2 pi i)^2
// over vertical lines with Re z2 > Re z1 + 1; alpha = 1/gamma^2.
// The imaginary part is the internal consistency check and is folded into
// the reported error.
ReferenceValue two_point_contour(double t, double x, double y, double alpha);

// Gumbel utilities.
double gumbel_cdf(double z);                        // exp(-e^{-z})
double gumbel_sample(double u);                     // -log(-log u)
constexpr double kGumbelVariance = 1.6449340668482264365;  // pi^2/6

// Extremal reference for k(N) = floor(exp(c sqrt(N)/2 + d N^{1/4} + r_N))
// sticky walkers at macroscopic time t:
//   a_N(c,d,s) = sqrt(c s N) - d N^{1/4} sqrt(s/c) - sqrt(c/s)(r_N - log(N)/4)
// and the limit law sqrt(t/c) G + log U(t^2/c, t d/c) + log(t/c) with
// G = standard Gumbel + c^{3/2} t^{-1/2}/6.  In the sigma = 0 mode the
// SHE factor is the deterministic log heat kernel.
struct ExtremeReference {
  double c = 1.0, d = 0.0, t = 1.0;
  double r_n = 0.0;

  double a_n(double N) const;
  static int64_t k_of(double N, double c, double d, double r_n);

  // sigma = 0 deterministic offset: log p_{t^2/c}(t d / c) + log(t/c)
  double sigma0_offset() const;
  // CDF of the sigma = 0 limit law (shifted, scaled Gumbel)
  double sigma0_cdf(double z) const;
  // sample of the sigma = 0 limit law from a uniform
  double sigma0_sample(double u) const;
  double gumbel_shift() const;  // c^{3/2} t^{-1/2} / 6
};

}  // namespace rwlab
