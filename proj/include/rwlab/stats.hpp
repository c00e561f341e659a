#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace rwlab {

// Neumaier compensated summation; used wherever a 1e-12-grade mass or
// identity check depends on the summation error itself.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double t = s + x;
    if (std::fabs(s) >= std::fabs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double get() const { return s + c; }
};

// Streaming mean/variance with standard errors (Welford).
struct Moments {
  double n = 0, mean = 0, m2 = 0, m3 = 0, m4 = 0;
  void add(double x) {
    n += 1;
    double d = x - mean;
    double dn = d / n;
    double dn2 = dn * dn;
    double t1 = d * dn * (n - 1);
    mean += dn;
    m4 += t1 * dn2 * (n * n - 3 * n + 3) + 6 * dn2 * m2 - 4 * dn * m3;
    m3 += t1 * dn * (n - 2) - 3 * dn * m2;
    m2 += t1;
  }
  double variance() const { return n > 1 ? m2 / (n - 1) : 0.0; }
  double se_mean() const { return n > 1 ? std::sqrt(variance() / n) : 0.0; }
  // Standard error of the sample variance via the fourth central moment.
  double se_variance() const {
    if (n < 4) return 0.0;
    double v = variance();
    double mu4 = m4 / n;
    double var_s2 = (mu4 - (n - 3) / (n - 1) * v * v) / n;
    return var_s2 > 0 ? std::sqrt(var_s2) : 0.0;
  }
};

// One-sample Kolmogorov-Smirnov distance against a reference CDF.
template <class Cdf>
double ks_distance(std::vector<double> sample, Cdf&& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = double(sample.size());
  double d = 0.0;
  for (size_t i = 0; i < sample.size(); ++i) {
    double f = cdf(sample[i]);
    d = std::max(d, std::fabs(double(i + 1) / n - f));
    d = std::max(d, std::fabs(f - double(i) / n));
  }
  return d;
}

// Unweighted least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(x.size());
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace rwlab
