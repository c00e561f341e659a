#include "rwlab/env.hpp"

#include <cmath>
#include <stdexcept>

#include "rwlab/simd.hpp"
#include "rwlab/special.hpp"

namespace rwlab {

namespace {

// ∫_0^y x^{alpha+i-1} (1-x)^{alpha+j-1} dx / B(alpha,alpha)
double beta_partial_moment(double alpha, int i, int j, double y) {
  double lb = log_beta(alpha + i, alpha + j) - log_beta(alpha, alpha);
  return std::exp(lb) * betainc(alpha + i, alpha + j, y);
}

// Moment table of min(1, w + d) for a Beta(alpha,alpha) (alpha=1: uniform) base.
double beta_shifted_moment(double alpha, double d, int b, int c) {
  if (d == 0.0) return beta_partial_moment(alpha, b, c, 1.0);
  const double y = 1.0 - d;
  double acc = 0.0;
  for (int i = 0; i <= b; ++i) {
    for (int j = 0; j <= c; ++j) {
      double coef = binom(b, i) * binom(c, j) * std::pow(d, b - i) *
                    std::pow(-d, c - j);
      acc += coef * beta_partial_moment(alpha, i, j, y);
    }
  }
  if (c == 0) acc += 1.0 - betainc(alpha, alpha, y);
  return acc;
}

void fill_table_from_atoms(EnvSpec& s) {
  auto pts = s.atoms();
  for (int b = 0; b <= kMomentMax; ++b) {
    for (int c = 0; c + b <= kMomentMax; ++c) {
      double m = 0.0;
      for (auto& [x, p] : pts) m += p * std::pow(x, b) * std::pow(1.0 - x, c);
      s.mm[size_t(b)][size_t(c)] = m;
    }
  }
}

void fill_table(EnvSpec& s) {
  if (s.finite_support()) {
    fill_table_from_atoms(s);
  } else {
    double alpha = (s.kind == Dist::Uniform) ? 1.0 : s.alpha;
    for (int b = 0; b <= kMomentMax; ++b)
      for (int c = 0; c + b <= kMomentMax; ++c)
        s.mm[size_t(b)][size_t(c)] = beta_shifted_moment(alpha, s.shift, b, c);
  }
  s.mu = s.mm[1][0];
  s.sigma2 = s.mm[2][0] - s.mu * s.mu;
}

}  // namespace

double EnvSpec::sample(double u) const {
  double w;
  switch (kind) {
    case Dist::DegenerateHalf: w = 0.5; break;
    case Dist::TwoPoint: w = (u < 0.5) ? 0.5 - a : 0.5 + a; break;
    case Dist::BernoulliHalf: w = (u < 0.5) ? 0.0 : 1.0; break;
    case Dist::Uniform: w = u; break;
    case Dist::Beta: w = betainc_inv(alpha, alpha, u); break;
    default: w = 0.5;
  }
  if (shift != 0.0) w = std::min(1.0, w + shift);
  return w;
}

std::vector<std::pair<double, double>> EnvSpec::atoms() const {
  std::vector<std::pair<double, double>> pts;
  switch (kind) {
    case Dist::DegenerateHalf: pts = {{0.5, 1.0}}; break;
    case Dist::TwoPoint: pts = {{0.5 - a, 0.5}, {0.5 + a, 0.5}}; break;
    case Dist::BernoulliHalf: pts = {{0.0, 0.5}, {1.0, 0.5}}; break;
    default: throw std::logic_error("atoms(): continuous spec");
  }
  if (shift != 0.0)
    for (auto& [x, p] : pts) x = std::min(1.0, x + shift);
  return pts;
}

std::string EnvSpec::name() const {
  std::string base;
  switch (kind) {
    case Dist::DegenerateHalf: base = "degenerate-half"; break;
    case Dist::TwoPoint: base = "two-point{a=" + std::to_string(a) + "}"; break;
    case Dist::Beta: base = "beta{alpha=" + std::to_string(alpha) + "}"; break;
    case Dist::Uniform: base = "uniform"; break;
    case Dist::BernoulliHalf: base = "bernoulli-half"; break;
  }
  if (shift != 0.0) base += "+shift{" + std::to_string(shift) + "}";
  return base;
}

EnvSpec make_spec(Dist kind, double param) {
  EnvSpec s;
  s.kind = kind;
  switch (kind) {
    case Dist::TwoPoint:
      if (!(param >= 0.0 && param <= 0.5))
        throw std::invalid_argument("two-point offset a must lie in [0, 1/2]");
      s.a = param;
      break;
    case Dist::Beta:
      if (!(param > 0.0)) throw std::invalid_argument("beta alpha must be > 0");
      s.alpha = param;
      break;
    default: break;
  }
  fill_table(s);
  return s;
}

double rho_n(double N) {
  double h = std::pow(N, -0.25);
  return 1.0 / (1.0 + std::exp(-2.0 * h));
}

double shifted_mean(const EnvSpec& spec, double d) {
  EnvSpec s = spec;
  s.shift = spec.shift + d;
  if (s.finite_support()) {
    double m = 0.0;
    for (auto& [x, p] : s.atoms()) m += p * x;
    return m;
  }
  double alpha = (s.kind == Dist::Uniform) ? 1.0 : s.alpha;
  return beta_shifted_moment(alpha, s.shift, 1, 0);
}

EnvSpec skewed_spec(const EnvSpec& spec, double N) {
  if (std::fabs(spec.mu - 0.5) > 1e-12)
    throw std::invalid_argument("skewed_spec requires a mean-1/2 base spec");
  const double target = rho_n(N);
  double lo = 0.0, hi = 0.5;
  if (shifted_mean(spec, hi) < target - 1e-12)
    throw std::invalid_argument("skewed_spec: mean rho_N unreachable with d in [0,1/2]");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (shifted_mean(spec, mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15) break;
  }
  EnvSpec out = spec;
  out.shift = spec.shift + 0.5 * (lo + hi);
  fill_table(out);
  return out;
}

double Environment::weight(int64_t t, int64_t y) const {
  uint64_t i = uint64_t(y + t) >> 1;
  uint32_t parity = uint32_t(y) & 1u;
  Philox4x32 b = philox_block(seed, uint32_t(t), uint32_t(i >> 1),
                              0x0E57D1CEu ^ parity, 0);
  uint64_t bits = (i & 1) ? ((uint64_t(b.c3) << 32) | b.c2)
                          : ((uint64_t(b.c1) << 32) | b.c0);
  return spec.sample(u01_from_bits(bits));
}

void Environment::weight_row(int64_t t, int64_t y0, size_t n, double* w) const {
  // y0 must be the first site of the row's parity class so that the pair
  // blocking lines up with weight(); the density evolvers always pass -t.
  uint64_t i0 = uint64_t(y0 + t) >> 1;
  if (i0 == 0) {
    kernels().weight_row_u01(seed, uint32_t(t), uint32_t(y0) & 1u, n, w);
  } else {
    for (size_t i = 0; i < n; ++i) w[i] = weight(t, y0 + 2 * int64_t(i));
    return;
  }
  switch (spec.kind) {
    case Dist::DegenerateHalf:
      for (size_t i = 0; i < n; ++i) w[i] = 0.5;
      break;
    case Dist::TwoPoint: {
      const double lo = 0.5 - spec.a, hi = 0.5 + spec.a;
      for (size_t i = 0; i < n; ++i) w[i] = (w[i] < 0.5) ? lo : hi;
      break;
    }
    case Dist::BernoulliHalf:
      for (size_t i = 0; i < n; ++i) w[i] = (w[i] < 0.5) ? 0.0 : 1.0;
      break;
    case Dist::Uniform:
      break;
    case Dist::Beta:
      for (size_t i = 0; i < n; ++i) w[i] = betainc_inv(spec.alpha, spec.alpha, w[i]);
      break;
  }
  if (spec.shift != 0.0)
    for (size_t i = 0; i < n; ++i) w[i] = std::min(1.0, w[i] + spec.shift);
}

}  // namespace rwlab
