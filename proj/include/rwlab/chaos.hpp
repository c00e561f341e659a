#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rwlab/env.hpp"
#include "rwlab/qkernel.hpp"
#include "rwlab/testfn.hpp"

// Polynomial chaos expansion of the quenched density in the centered
// weights w^ = 2w - 1:
//   P(n,y) = p(n,y) + sum_k sum_{z_1<..<z_k} phi_k(z_1..z_k) prod w^(z_i),
// with product-of-difference-kernel coefficients.  Reconstruction is exact
// and is evaluated through the recursive factorization
//   S(z) = w^(z)/2 [ p(z) + sum_{z'<z} S(z') D(z'->z) ],
// rather than enumerating tuples.

namespace rwlab {

// Transition density of the simple symmetric walk; exact in double
// precision for n <= 30 (binomial values fit the mantissa).
double srw_kernel(int64_t n, int64_t y);

// Precomputed triangular table p(i, .) for i <= n.
class SrwTable {
 public:
  explicit SrwTable(int64_t n);
  double operator()(int64_t i, int64_t j) const;
  int64_t n() const { return n_; }

 private:
  int64_t n_;
  std::vector<std::vector<double>> rows_;  // rows_[i][(j+i)/2]
};

using ChaosSite = std::pair<int64_t, int64_t>;  // (time i, site j)

// Coefficient phi_k^{(n,y)}(z_1..z_k) for strictly increasing times.
double chaos_coefficient(int64_t n, int64_t y, const std::vector<ChaosSite>& z);

// Full-series reconstruction of P(n,y); n <= 10 (quadratic blowup beyond).
double chaos_reconstruct(const Environment& env, int64_t n, int64_t y);

// Exact L2 norms of the rescaled chaos terms
//   term_k = C_{N,t,x} N^{-k/2} sum phi_k prod w^,
// i.e. Var(term_k) = C^2 N^{-k} (4 s2)^k sum phi_k^2.  Exact summation;
// k = 2 is an O(sites^2) pair sum and is capped at Nt <= 320.
double chaos_term_l2(double N, double t, double x, double sigma2, int k);

// One sampled value of term_k in a concrete environment (k = 1 any size;
// k = 2 capped at Nt <= 48).
double chaos_term_sample(const Environment& env, double N, double t, double x, int k);

// Closed-form limit of Var(term_1): 2 s2 e^{-x^2/t} / sqrt(pi t).
double chaos_term1_l2_limit(double t, double x, double sigma2);

// Exact annealed pair quantities through the tilted two-point transfer
// matrix (weights of mean 1/2).  Evolved over the full support; O(r^3).
class PairTransfer {
 public:
  PairTransfer(const EnvSpec& nu, double N);
  void advance_to(int64_t r);
  int64_t r() const { return r_; }
  // E[U_N(r/N, phi)^2] = sum D(y1,y2) phi(x1) phi(x2)
  double field_second_moment(const TestFunction& phi) const;
  // E[(C P(r,y))^2] = D(y,y)
  double point_second_moment(int64_t y) const;

 private:
  EnvSpec nu_;
  Scaling s_;
  int64_t r_ = 0;
  std::vector<double> d_, next_;  // (r+1)^2 grid, index i1*(r+1)+i2
};

}  // namespace rwlab
