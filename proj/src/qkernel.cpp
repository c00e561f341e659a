#include "rwlab/qkernel.hpp"

#include <algorithm>
#include <cmath>

#include "rwlab/simd.hpp"
#include "rwlab/special.hpp"
#include "rwlab/stats.hpp"

namespace rwlab {

double constant_log_c(double N, double t, double x) {
  double h = std::pow(N, -0.25);
  return std::pow(N, 0.25) * x + (std::sqrt(N) - N * log_cosh(h)) * t;
}

Scaling::Scaling(double N_) : N(N_) {
  n14 = std::pow(N, 0.25);
  n12 = std::sqrt(N);
  n34 = n14 * n12;
  inv14 = 1.0 / n14;
  inv12 = 1.0 / n12;
  inv34 = 1.0 / n34;
  rho = rho_n(N);
  kappa = inv12 - log_cosh(inv14);
}

DensityEvolver::DensityEvolver(Environment env, double N, Mode mode)
    : env_(std::move(env)), scal_(N), mode_(mode) {
  if (mode == Raw) {
    a_ = 1.0;
    b_ = 1.0;
  } else {
    a_ = 2.0 * (1.0 - scal_.rho);
    b_ = 2.0 * scal_.rho;
  }
  cur_.t = 0;
  cur_.v.assign(1, 1.0);
}

void DensityEvolver::step() {
  const int64_t t = cur_.t;
  const size_t n = cur_.v.size();  // n = t+1 sites
  wrow_.resize(n);
  env_.weight_row(t, -t, n, wrow_.data());
  next_.resize(n + 1);
  kernels().density_step(cur_.v.data(), wrow_.data(), n, a_, b_, kDensityFloor,
                         next_.data());
  cur_.v.swap(next_);
  cur_.t = t + 1;
}

void DensityEvolver::advance_to(int64_t t) {
  while (cur_.t < t) step();
}

double total_mass(const DensityRow& p) {
  KahanSum s;
  for (double v : p.v) s.add(v);
  return s.get();
}

double tilted_raw_mismatch(const DensityRow& tilted, const DensityRow& raw,
                           const Scaling& s) {
  double worst = 0.0;
  for (size_t i = 0; i < tilted.v.size(); ++i) {
    double w = tilted.v[i];
    if (w <= 1e-280) continue;
    double p = raw.v[i];
    if (p <= 0.0) return HUGE_VAL;
    int64_t y = tilted.y_of(i);
    // log C_{N, t/N, x(y)} = N^{-1/4} (y - t N^{-1/4}) + kappa * t
    double logc =
        s.inv14 * (double(y) - double(tilted.t) * s.inv14) + s.kappa * double(tilted.t);
    double rel = std::fabs(std::log(w) - (logc + std::log(p))) /
                 std::max(1.0, std::fabs(std::log(w)));
    worst = std::max(worst, rel);
  }
  return worst;
}

double pair_field(const DensityRow& w, const Scaling& s, const TestFunction& phi) {
  const size_t n = w.v.size();
  std::vector<double> f(n);
  double x0 = s.x_of(w.t, w.y0());
  double dx = 2.0 * s.inv12;
  for (size_t i = 0; i < n; ++i) f[i] = phi(x0 + dx * double(i));
  return kernels().dot(f.data(), w.v.data(), n);
}

double pair_field_windowed(const DensityRow& w, const Scaling& s,
                           const TestFunction& phi) {
  const double rad = phi.support_radius();
  const double x0 = s.x_of(w.t, w.y0());
  const double dx = 2.0 * s.inv12;
  const size_t n = w.v.size();
  double ilo_f = std::floor((-rad - x0) / dx);
  double ihi_f = std::ceil((rad - x0) / dx);
  size_t ilo = size_t(std::max(0.0, ilo_f));
  size_t ihi = size_t(std::clamp(ihi_f + 1.0, 0.0, double(n)));
  if (ilo >= ihi) return 0.0;
  static thread_local std::vector<double> f;
  f.resize(ihi - ilo);
  for (size_t i = ilo; i < ihi; ++i) f[i - ilo] = phi(x0 + dx * double(i));
  return kernels().dot(f.data(), w.v.data() + ilo, ihi - ilo);
}

double tail_field(const DensityRow& w, const Scaling& s, double t, double x) {
  const double m = s.n34 * t + s.n12 * x;
  const int64_t tt = w.t;
  // first parity site >= m
  int64_t y_first = int64_t(std::ceil(m));
  if (((y_first + tt) & 1) != 0) ++y_first;
  if (y_first > tt) return 0.0;
  int64_t i_first = (y_first + tt) / 2;
  if (i_first < 0) i_first = 0;
  const double q2 = std::exp(-2.0 * s.inv14);
  double acc = 0.0;
  for (int64_t i = int64_t(w.v.size()) - 1; i >= i_first; --i)
    acc = w.v[size_t(i)] + q2 * acc;
  // acc = sum_{y >= y_first} W e^{-N^{-1/4}(y - y_first)}
  return s.n14 * acc * std::exp(-s.inv14 * (double(y_first) - m));
}

double TailTable::at_or_above(int64_t y) const {
  if (tail.empty()) return 0.0;
  if (y > y_top) return 0.0;
  int64_t k = (y_top - y) / 2;  // parity handled by caller
  if (size_t(k) >= tail.size()) return 1.0;  // below the tabulated window
  return tail[size_t(k)];
}

TailTable tail_table(const DensityRow& w, const Scaling& s, double floor_prob) {
  TailTable out;
  const int64_t tt = w.t;
  out.y_top = tt;
  const double q2 = std::exp(-2.0 * s.inv14);
  double acc = 0.0;
  out.tail.reserve(1024);
  for (int64_t i = int64_t(w.v.size()) - 1; i >= 0; --i) {
    acc = w.v[size_t(i)] + q2 * acc;
    int64_t y = w.y_of(size_t(i));
    // T(y) = e^{-log C(y)} * acc, computed in log space
    double logc = s.inv14 * (double(y) - double(tt) * s.inv14) + s.kappa * double(tt);
    double T = (acc > 0.0) ? std::exp(std::log(acc) - logc) : 0.0;
    if (T > 1.0) T = 1.0;
    out.tail.push_back(T);
    if (T > floor_prob) break;
  }
  return out;
}

}  // namespace rwlab
