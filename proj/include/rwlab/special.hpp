#pragma once

#include <cmath>
#include <cstdint>

// Small numerics toolbox: stable log-cosh, binomials, and the regularized
// incomplete beta function with its inverse (used for Beta sampling and
// skewed moment tables).

namespace rwlab {

// log(cosh(x)) without cancellation or overflow: |x| - log 2 + log1p(e^{-2|x|}).
inline double log_cosh(double x) {
  double a = std::fabs(x);
  return a - 0.6931471805599453094172321215 + std::log1p(std::exp(-2.0 * a));
}

inline double log_binom(int64_t n, int64_t k) {
  if (k < 0 || k > n) return -HUGE_VAL;
  return std::lgamma(double(n + 1)) - std::lgamma(double(k + 1)) -
         std::lgamma(double(n - k + 1));
}

// Exact for n <= 30 (values fit in the double mantissa).
inline double binom(int64_t n, int64_t k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  if (n <= 62) {
    uint64_t num = 1;
    for (int64_t i = 1; i <= k; ++i) num = num * uint64_t(n - k + i) / uint64_t(i);
    return double(num);
  }
  return std::exp(log_binom(n, k));
}

double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
double betainc(double a, double b, double x);

// Inverse of I_x(a,b) in x; |I_result - p| driven below ~1e-14.
double betainc_inv(double a, double b, double p);

// Standard normal CDF.
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

}  // namespace rwlab
