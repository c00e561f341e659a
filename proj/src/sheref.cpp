#include "rwlab/sheref.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "rwlab/rng.hpp"
#include "rwlab/stats.hpp"

namespace rwlab {

double heat_kernel(double t, double x) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel: t must be > 0");
  return std::exp(-x * x / (2.0 * t)) / std::sqrt(2.0 * M_PI * t);
}

double gamma_coeff(double sigma2) {
  if (!(sigma2 >= 0.0 && sigma2 < 0.25))
    throw std::invalid_argument("gamma_coeff: sigma2 must lie in [0, 1/4)");
  return std::sqrt(8.0 * sigma2 / (1.0 - 4.0 * sigma2));
}

namespace {

double box_muller(uint64_t key, uint64_t a, uint64_t b) {
  double u1, u2;
  philox_u01x2(key, a, b, u1, u2);
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

ReferenceValue she_moment_bridge_mc(int k, double t, const std::vector<double>& x,
                                    double gamma, const BridgeMcParams& prm) {
  if (k < 1 || k > 4) throw std::invalid_argument("she_moment_bridge_mc: k <= 4");
  if (int(x.size()) != k) throw std::invalid_argument("she_moment_bridge_mc: |x| != k");
  double prefac = 1.0;
  for (double xi : x) prefac *= heat_kernel(t, xi);
  if (k == 1 || gamma == 0.0) return {prefac, 0.0, "closed-form"};

  const double theta = 0.5 * gamma * gamma;
  const int64_t M = prm.steps;
  const double dt = t / double(M);
  const int pairs = k * (k - 1) / 2;
  Moments stat;
  std::vector<double> pos(static_cast<size_t>(k));
  std::vector<double> occ_o(static_cast<size_t>(pairs)), occ_i(static_cast<size_t>(pairs));
  for (int64_t path = 0; path < prm.paths; ++path) {
    uint64_t key = derive_key(prm.seed, uint64_t(path), CTR_BRIDGE_NORMAL);
    for (int j = 0; j < k; ++j) pos[size_t(j)] = 0.0;
    std::fill(occ_o.begin(), occ_o.end(), 0.0);
    std::fill(occ_i.begin(), occ_i.end(), 0.0);
    for (int64_t m = 0; m < M; ++m) {
      double s = dt * double(m);
      double rem = t - s;
      for (int j = 0; j < k; ++j) {
        double z = box_muller(key, uint64_t(m), uint64_t(j));
        double var = dt * (rem - dt) / rem;
        if (var < 0) var = 0;
        pos[size_t(j)] += (x[size_t(j)] - pos[size_t(j)]) * dt / rem +
                          std::sqrt(var) * z;
      }
      int q = 0;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j, ++q) {
          double d = std::fabs(pos[size_t(i)] - pos[size_t(j)]);
          if (d <= prm.delta) occ_o[size_t(q)] += dt;
          if (d <= 0.5 * prm.delta) occ_i[size_t(q)] += dt;
        }
    }
    double lsum = 0.0;
    for (int q = 0; q < pairs; ++q) {
      // band estimator L(delta) = occupation/delta, Richardson in delta
      double lo = occ_o[size_t(q)] / prm.delta;
      double li = occ_i[size_t(q)] / (0.5 * prm.delta);
      lsum += 2.0 * li - lo;
    }
    stat.add(std::exp(theta * lsum));
  }
  return {prefac * stat.mean, prefac * stat.se_mean(), "bridge-MC"};
}

ReferenceValue two_point_contour(double t, double x, double y, double alpha) {
  if (!(alpha > 0.0) || !(t > 0.0))
    throw std::invalid_argument("two_point_contour: need alpha > 0, t > 0");
  // contour placement: saddles at alpha x / t shifted to keep r2 > r1 + 1
  double r1 = alpha * x / t, r2 = alpha * y / t;
  const double gap = 0.5;
  if (r2 - r1 < 1.0 + gap) {
    double mid = 0.5 * (r1 + r2);
    r1 = mid - 0.5 * (1.0 + gap);
    r2 = mid + 0.5 * (1.0 + gap);
  }
  // Gaussian factor e^{-(t/2a^2) s^2}: scale and truncation
  const double sscale = alpha / std::sqrt(t);
  const double L = 12.0 * std::max(1.0, sscale) * (1.0 + std::fabs(x) + std::fabs(y));
  // resolve the fastest oscillation e^{i s (t r/a^2 - x/a)}
  double freq = std::max(std::fabs(t * r1 / (alpha * alpha) - x / alpha),
                         std::fabs(t * r2 / (alpha * alpha) - y / alpha)) +
                1.0 / sscale;
  double h = std::min(sscale / 10.0, 2.0 * M_PI / freq / 40.0);
  int64_t n = int64_t(std::ceil(2.0 * L / h));
  if (n % 2 == 1) ++n;
  h = 2.0 * L / double(n);

  using cplx = std::complex<double>;
  const double c = t / (2.0 * alpha * alpha);
  std::vector<cplx> a1(size_t(n) + 1), a2(size_t(n) + 1);
  for (int64_t i = 0; i <= n; ++i) {
    double s = -L + h * double(i);
    cplx z1(r1, s), z2(r2, s);
    a1[size_t(i)] = std::exp(c * z1 * z1 - (x / alpha) * z1);
    a2[size_t(i)] = std::exp(c * z2 * z2 - (y / alpha) * z2);
  }
  // rational factor depends on s2 - s1 only
  std::vector<cplx> rat(2 * size_t(n) + 1);
  for (int64_t dks = -n; dks <= n; ++dks) {
    cplx dz(r2 - r1, h * double(dks));
    rat[size_t(dks + n)] = dz / (dz - 1.0);
  }
  cplx total(0.0, 0.0);
  for (int64_t i = 0; i <= n; ++i) {
    cplx row(0.0, 0.0);
    const cplx* rbase = rat.data() + (n - i);
    for (int64_t j = 0; j <= n; ++j) row += a2[size_t(j)] * rbase[j];
    total += a1[size_t(i)] * row;
  }
  // dz = i ds, so each contour contributes ds/(2 pi)
  total *= (h / (2.0 * M_PI)) * (h / (2.0 * M_PI));
  total /= alpha * alpha;
  double tail = std::exp(-c * L * L) * 1e3;  // generous truncation bound
  return {total.real(), std::fabs(total.imag()) + tail + 1e-10, "contour"};
}

double gumbel_cdf(double z) { return std::exp(-std::exp(-z)); }
double gumbel_sample(double u) {
  if (u < 1e-300) u = 1e-300;
  if (u > 1.0 - 1e-16) u = 1.0 - 1e-16;
  return -std::log(-std::log(u));
}

double ExtremeReference::a_n(double N) const {
  return std::sqrt(c * t * N) - d * std::pow(N, 0.25) * std::sqrt(t / c) -
         std::sqrt(c / t) * (r_n - 0.25 * std::log(N));
}

int64_t ExtremeReference::k_of(double N, double c, double d, double r_n) {
  return int64_t(std::floor(std::exp(0.5 * c * std::sqrt(N) + d * std::pow(N, 0.25) + r_n)));
}

double ExtremeReference::gumbel_shift() const {
  return std::pow(c, 1.5) / (6.0 * std::sqrt(t));
}

double ExtremeReference::sigma0_offset() const {
  return std::log(heat_kernel(t * t / c, t * d / c)) + std::log(t / c);
}

double ExtremeReference::sigma0_cdf(double z) const {
  double g = (z - sigma0_offset()) / std::sqrt(t / c) - gumbel_shift();
  return gumbel_cdf(g);
}

double ExtremeReference::sigma0_sample(double u) const {
  return std::sqrt(t / c) * (gumbel_sample(u) + gumbel_shift()) + sigma0_offset();
}

}  // namespace rwlab
