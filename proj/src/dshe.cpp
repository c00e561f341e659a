#include "rwlab/dshe.hpp"

#include <algorithm>
#include <cmath>

#include "rwlab/simd.hpp"

namespace rwlab {

double SpaceTimeGauss::l2_strip(double T) const {
  const double rt_pi_half = 0.5 * std::sqrt(M_PI);
  double ti = (st / std::sqrt(2.0)) * rt_pi_half *
              (std::erf(std::sqrt(2.0) * (T - t0) / st) +
               std::erf(std::sqrt(2.0) * t0 / st));
  double xi = sx * std::sqrt(M_PI / 2.0);
  return ti * xi;
}

DiscreteSheRun::DiscreteSheRun(Environment env, double N,
                               std::vector<TestFunction> phis,
                               const SpaceTimeGauss* xi_phi)
    : ev_(std::move(env), N, DensityEvolver::Tilted),
      s2_(ev_.env().spec.sigma2),
      xi_phi_(xi_phi) {
  acc_.reserve(phis.size());
  for (auto& p : phis) {
    ShePerPhi a;
    a.phi = p;
    acc_.push_back(a);
  }
}

double DiscreteSheRun::field_pairing(const TestFunction& phi) const {
  return pair_field_windowed(ev_.row(), ev_.scaling(), phi);
}

void DiscreteSheRun::step() {
  const Scaling& s = ev_.scaling();
  const int64_t r = r_;
  const double rho = s.rho;
  const double h = s.inv12;
  const double qv_coef = 4.0 * s2_;
  const double grad_c = (2.0 * rho - 1.0) * (2.0 * rho - 1.0);

  prevW_ = ev_.row().v;  // W(r, .), n = r+1 sites
  const size_t n = prevW_.size();
  const double x0 = s.x_of(r, -r);
  const double dx = 2.0 * h;

  ev_.step();
  const std::vector<double>& om = ev_.last_weights();
  const DensityRow& nxt = ev_.row();  // W(r+1, .), n+1 sites

  eta_.resize(n);
  for (size_t i = 0; i < n; ++i) eta_[i] = 2.0 * om[i] - 1.0;

  // martingale-difference row on destination sites: weight form (mzero')
  // against the discrete heat operator applied to W (heat1)
  vrow_.resize(n + 1);
  double mism = 0.0;
  for (size_t i = 0; i <= n; ++i) {
    double w_lo = (i > 0) ? prevW_[i - 1] : 0.0;  // W(r, y-1)
    double w_hi = (i < n) ? prevW_[i] : 0.0;      // W(r, y+1)
    double e_lo = (i > 0) ? eta_[i - 1] : 0.0;
    double e_hi = (i < n) ? eta_[i] : 0.0;
    double v_weight = -e_hi * (1.0 - rho) * w_hi + e_lo * rho * w_lo;
    double v_heat = nxt.v[i] - (rho * w_lo + (1.0 - rho) * w_hi);
    vrow_[i] = v_weight;
    mism = std::max(mism, std::fabs(v_weight - v_heat));
  }
  stencil_mismatch_ = std::max(stencil_mismatch_, mism);

  ph_.resize(n);
  phm_.resize(n);
  php_.resize(n);
  for (auto& a : acc_) {
    const TestFunction& phi = a.phi;
    for (size_t i = 0; i < n; ++i) {
      double x = x0 + dx * double(i);
      ph_[i] = phi(x);
      phm_[i] = phi(x - h);
      php_[i] = phi(x + h);
    }

    // row-based accumulators at time index r
    const double win = phi.support_radius() + 1.0;
    double q = 0, qsq = 0, qwin = 0, err = 0, pred = 0, u = 0;
    for (size_t i = 0; i < n; ++i) {
      double w = prevW_[i], w2 = w * w;
      double ph = ph_[i];
      double grad = (1.0 - rho) * phm_[i] - rho * php_[i];
      q += ph * w2;
      qsq += ph * ph * w2;
      double x = x0 + dx * double(i);
      qwin += (x >= -win && x <= win) ? w2 : 0.0;
      err += (grad * grad - grad_c * ph * ph) * w2;
      pred += (grad * w) * (grad * w);
      u += ph * w;
    }
    double dQ = qv_coef * h * q;
    double dQsq = qv_coef * h * qsq;
    double dQwin = qv_coef * h * qwin;
    double dErr = qv_coef * err;
    a.Q += dQ;
    a.Q_sq += dQsq;
    a.Q_win += dQwin;
    a.err_term += dErr;
    a.pred_qv += qv_coef * pred;
    a.u_sq_sum += u * u;
    if (phi.is_c1()) {
      double c1 = phi.c1_norm();
      a.max_ebound_excess = std::max(
          a.max_ebound_excess, std::fabs(dErr) - 8.0 * s.inv14 * s2_ * c1 * c1 * dQwin);
      a.max_ebound_excess_valid = std::max(
          a.max_ebound_excess_valid, std::fabs(dErr) - 2.0 * s.inv14 * c1 * c1 * dQwin);
    }

    // step-based accumulators: both M routes, noise fields, cross variation
    double dM_field = 0.0;
    for (size_t i = 0; i < n; ++i) dM_field += phm_[i] * vrow_[i];
    dM_field += php_[n - 1] * vrow_[n];  // rightmost destination site
    double dM_grad = 0.0, dW = 0.0, cross = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double grad = (1.0 - rho) * phm_[i] - rho * php_[i];
      dM_grad += grad * prevW_[i] * (-eta_[i]);
      dW += ph_[i] * eta_[i];
      cross += ph_[i] * grad * prevW_[i];
    }
    dW *= s.inv34;
    a.M += dM_field;
    a.M_grad += dM_grad;
    a.max_m_mismatch = std::max(a.max_m_mismatch, std::fabs(dM_field - dM_grad));
    a.opt_qv += dM_grad * dM_grad;
    a.w_field += dW;
    a.cross_exact += -qv_coef * s.inv34 * cross;
    a.cross_realized += dM_grad * dW;
  }

  if (xi_phi_ != nullptr) {
    const SpaceTimeGauss& phi = *xi_phi_;
    double tmac = double(r) / s.N;
    double rad = phi.x_radius();
    double ilo_f = std::floor((-rad - x0) / dx), ihi_f = std::ceil((rad - x0) / dx);
    size_t ilo = size_t(std::max(0.0, ilo_f));
    size_t ihi = size_t(std::clamp(ihi_f + 1.0, 0.0, double(n)));
    for (size_t i = ilo; i < ihi; ++i) {
      double ph = phi(tmac, x0 + dx * double(i));
      xi_sum_ += eta_[i] * ph;
      xi_sum_sq_ += ph * ph;
    }
  }

  r_ += 1;
}

void DiscreteSheRun::advance_steps(int64_t steps) {
  while (r_ < steps) step();
}

double DiscreteSheRun::xi_pairing() const {
  if (s2_ == 0.0) return 0.0;
  return xi_sum_ / std::sqrt(2.0 * std::pow(ev_.scaling().N, 1.5) * s2_);
}

double xi_variance_exact(double N, int64_t T_steps, const SpaceTimeGauss& phi) {
  Scaling s(N);
  double acc = 0.0;
  const double rad = phi.x_radius();
  for (int64_t r = 0; r <= T_steps; ++r) {
    double tmac = double(r) / N;
    double x0 = s.x_of(r, -r), dx = 2.0 * s.inv12;
    int64_t ilo = std::max<int64_t>(0, int64_t(std::floor((-rad - x0) / dx)));
    int64_t ihi = std::min<int64_t>(r, int64_t(std::ceil((rad - x0) / dx)));
    for (int64_t i = ilo; i <= ihi; ++i) {
      double ph = phi(tmac, x0 + dx * double(i));
      acc += ph * ph;
    }
  }
  return 2.0 * acc / std::pow(N, 1.5);
}

}  // namespace rwlab
