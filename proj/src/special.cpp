#include "rwlab/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rwlab {

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace {

// Lentz continued fraction for the incomplete beta (Numerical Recipes form).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) break;
  }
  return h;
}

}  // namespace

double betainc(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("betainc: a,b must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double lbt = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  double bt = std::exp(lbt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double betainc_inv(double a, double b, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  // Bisection bracket, refined by Newton.
  double lo = 0.0, hi = 1.0, x = 0.5;
  for (int i = 0; i < 64; ++i) {
    x = 0.5 * (lo + hi);
    double v = betainc(a, b, x);
    if (v < p)
      lo = x;
    else
      hi = x;
    if (hi - lo < 1e-10) break;
  }
  const double lb = log_beta(a, b);
  for (int i = 0; i < 32; ++i) {
    double f = betainc(a, b, x) - p;
    double lpdf = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lb;
    double step = f * std::exp(-lpdf);
    double xn = x - step;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (betainc(a, b, xn) < p)
      lo = xn;
    else
      hi = xn;
    if (std::fabs(xn - x) <= 1e-15 * (1.0 + std::fabs(x))) {
      x = xn;
      break;
    }
    x = xn;
  }
  return x;
}

}  // namespace rwlab
