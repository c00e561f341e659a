#pragma once

#include <cstdint>
#include <vector>

#include "rwlab/env.hpp"
#include "rwlab/testfn.hpp"

// Quenched transition densities and their exponentially tilted (Hopf-Cole)
// form.
//
// The raw density P(t,y) lives on y in [-t,t] with y = t (mod 2) and obeys
//   P(t+1,y) = (1-w_{t,y+1}) P(t,y+1) + w_{t,y-1} P(t,y-1).
// The tilted density W(t,y) = C_{N,t/N,N^{-1/2}(y - t N^{-1/4})} P(t,y)
// obeys the same-shaped recursion with constant coefficients
//   W(t+1,y) = 2(1-w_{t,y+1})(1-rho_N) W(t,y+1) + 2 w_{t,y-1} rho_N W(t,y-1),
// which keeps the values O(1) in the moderate-deviation window.  Both are
// stored densely over the parity class, index i <-> y = -t + 2i.

namespace rwlab {

// log C_{N,t,x} for macroscopic time t and space x.
double constant_log_c(double N, double t, double x);

// Per-N lattice constants.
struct Scaling {
  double N;
  double n14, n12, n34;        // N^{1/4}, N^{1/2}, N^{3/4}
  double inv14, inv12, inv34;  // their reciprocals
  double rho;                  // rho_N
  double kappa;                // N^{-1/2} - log cosh(N^{-1/4}), per lattice step
  explicit Scaling(double N_);
  // Macroscopic space coordinate of site y at lattice time r.
  double x_of(int64_t r, int64_t y) const { return inv12 * (double(y) - inv14 * double(r)); }
};

struct DensityRow {
  int64_t t = 0;                // lattice time
  std::vector<double> v;        // v[i] = value at y = -t + 2i
  int64_t y0() const { return -t; }
  int64_t y_of(size_t i) const { return -t + 2 * int64_t(i); }
  double at_y(int64_t y) const {
    int64_t i = (y + t) / 2;
    if (((y + t) & 1) != 0 || i < 0 || size_t(i) >= v.size()) return 0.0;
    return v[size_t(i)];
  }
};

// Values below this are clamped to zero by the evolvers (keeps the far
// tails of long runs out of the denormal range).
constexpr double kDensityFloor = 1e-290;

// Shared engine for the raw (a=b=1) and tilted (a=2(1-rho), b=2rho)
// recursions.  weights() exposes the row used by the last step.
class DensityEvolver {
 public:
  enum Mode { Raw, Tilted };
  DensityEvolver(Environment env, double N, Mode mode);

  void step();                    // advance t -> t+1
  void advance_to(int64_t t);     // repeated step()
  const DensityRow& row() const { return cur_; }
  const std::vector<double>& last_weights() const { return wrow_; }
  const Scaling& scaling() const { return scal_; }
  const Environment& env() const { return env_; }
  Mode mode() const { return mode_; }

 private:
  Environment env_;
  Scaling scal_;
  Mode mode_;
  double a_, b_;
  DensityRow cur_;
  std::vector<double> next_, wrow_;
};

// Mass of a raw density row, compensated summation.
double total_mass(const DensityRow& p);

// max over sites with W > 1e-280 of the relative mismatch between
// log W(t,y) and log C + log P(t,y); P supplied from a raw evolution of the
// same environment.
double tilted_raw_mismatch(const DensityRow& tilted, const DensityRow& raw,
                           const Scaling& s);

// Pairing  sum_y W(r,y) phi(x(r,y))  of a tilted row against a test
// function (the t = r/N slice of the density field).
double pair_field(const DensityRow& w, const Scaling& s, const TestFunction& phi);

// Same pairing restricted to the sites where |x| <= radius (used by the
// Monte Carlo estimators with rapidly decaying phi; radius from
// TestFunction::support_radius keeps the truncation below double noise).
double pair_field_windowed(const DensityRow& w, const Scaling& s,
                           const TestFunction& phi);

// Quenched tail field F_N(t,x) = N^{1/4} C_{N,t,x} P(R(Nt) >= N^{3/4}t + N^{1/2}x),
// summed from the tilted row as N^{1/4} sum_{y >= m} W e^{-N^{-1/4}(y-m)}.
double tail_field(const DensityRow& w, const Scaling& s, double t, double x);

// Raw tail probabilities T(y) = P(R(r) >= y) for all parity sites with
// T >= floor, listed from the rightmost site leftwards.  Used by the
// extremal sampler; values are exact suffix sums of P recovered from W.
struct TailTable {
  int64_t y_top;                 // largest support site
  std::vector<double> tail;      // tail[k] = T(y_top - 2k)
  double at_or_above(int64_t y) const;  // T(ceil to parity site)
};
TailTable tail_table(const DensityRow& w, const Scaling& s, double floor_prob);

}  // namespace rwlab
