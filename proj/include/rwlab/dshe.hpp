#pragma once

#include <cstdint>
#include <vector>

#include "rwlab/env.hpp"
#include "rwlab/qkernel.hpp"
#include "rwlab/testfn.hpp"

// The lattice stochastic heat equation satisfied by the tilted density:
// martingale field M_N, its quadratic variations, the quadratic martingale
// field Q_N with its exact error decomposition, and the noise fields.
//
// All sums run over the full support of the density so the algebraic
// identities hold to rounding:
//   stencil     v = L_N Z           ==  weight form            (1e-12)
//   M via field sum                 ==  M via gradient form    (1e-10)
//   <M(phi)>_T  ==  E_N(T,phi) + (2 rho_N - 1)^2 sqrt(N) Q_N(T,phi^2)
//   |dE_N| <= 8 N^{-1/4} s2 ||phi||_C1^2 dQ_N(window)          (pathwise)

namespace rwlab {

// Separable space-time Gaussian used for the noise-field pairings.
struct SpaceTimeGauss {
  double t0 = 0.5, st = 0.15;  // exp(-((t-t0)/st)^2)
  double x0 = 0.0, sx = 2.0;   // exp(-((x-x0)/sx)^2)
  double operator()(double t, double x) const {
    double u = (t - t0) / st, v = (x - x0) / sx;
    return std::exp(-u * u - v * v);
  }
  // ||phi||^2 over the strip [0,T] x R (closed form).
  double l2_strip(double T) const;
  double x_radius() const { return std::fabs(x0) + 6.5 * sx; }
};

struct ShePerPhi {
  TestFunction phi;
  double M = 0;              // M_N(t,phi), field-sum route
  double M_grad = 0;         // gradient-form route
  double opt_qv = 0;         // [M_N(phi)]_t
  double pred_qv = 0;        // <M_N(phi)>_t
  double Q = 0;              // Q_N(t,phi)
  double Q_sq = 0;           // Q_N(t,phi^2)
  double Q_win = 0;          // Q_N(t, 1_[-A-1,A+1])
  double err_term = 0;       // E_N(t,phi)
  double w_field = 0;        // W_N(t,phi) (time-integrated noise field)
  double cross_exact = 0;    // exact <M(phi), W(phi)>_t
  double cross_realized = 0; // sum of dM * dW
  double u_sq_sum = 0;       // sum over rows r <= Nt of U_N(r/N, phi)^2
  double max_m_mismatch = 0;     // max |dM_field - dM_grad| over steps
  double max_ebound_excess = 0;  // max over steps of |dE| - spec bound
  double max_ebound_excess_valid = 0;  // same with the 2||phi||_C1^2 constant
};

class DiscreteSheRun {
 public:
  DiscreteSheRun(Environment env, double N, std::vector<TestFunction> phis,
                 const SpaceTimeGauss* xi_phi = nullptr);

  // One martingale step: accumulates the r-row quantities, consumes the
  // weight row at r, advances the density to r+1.
  void step();
  // Steps until `steps` increments (r = 0..steps-1) have been applied, so
  // all "time t" observables with Nt = steps are complete.
  void advance_steps(int64_t steps);

  int64_t steps_done() const { return r_; }
  const std::vector<ShePerPhi>& per_phi() const { return acc_; }
  const DensityRow& density() const { return ev_.row(); }
  const Scaling& scaling() const { return ev_.scaling(); }
  double sigma2() const { return s2_; }

  // max over steps of the (mzero') vs (heat1) stencil mismatch
  double max_stencil_mismatch() const { return stencil_mismatch_; }

  // noise-field pairing sum_{r,y} eta phi(r/N, x) (unnormalized) and the
  // xi normalization (2 N^{3/2} s2)^{-1/2} eta-sum
  double xi_pairing() const;
  double xi_raw_sum() const { return xi_sum_; }
  double xi_sum_sq_phi() const { return xi_sum_sq_; }  // sum of phi^2 over sites

  // U_N(r/N, phi) of the current row for an arbitrary phi
  double field_pairing(const TestFunction& phi) const;

 private:
  DensityEvolver ev_;
  double s2_;
  const SpaceTimeGauss* xi_phi_;
  int64_t r_ = 0;
  std::vector<ShePerPhi> acc_;
  double stencil_mismatch_ = 0;
  double xi_sum_ = 0, xi_sum_sq_ = 0;
  std::vector<double> prevW_, eta_, vrow_, ph_, phm_, php_;
};

// Exact variance of the xi pairing at level N over [0,T]: the Riemann sum
// (2/N^{3/2}) sum phi(t,x)^2 over the parity lattice; environment free.
double xi_variance_exact(double N, int64_t T_steps, const SpaceTimeGauss& phi);

}  // namespace rwlab
