#include "rwlab/chaos.hpp"

#include <cmath>
#include <stdexcept>

#include "rwlab/special.hpp"

namespace rwlab {

double srw_kernel(int64_t n, int64_t y) {
  if (n < 0 || ((n + y) & 1) != 0 || y < -n || y > n) return 0.0;
  int64_t m = (n + y) / 2;
  if (n <= 30) return binom(n, m) * std::pow(2.0, double(-n));
  return std::exp(log_binom(n, m) - double(n) * 0.6931471805599453094172321215);
}

SrwTable::SrwTable(int64_t n) : n_(n), rows_(size_t(n) + 1) {
  for (int64_t i = 0; i <= n; ++i) {
    auto& row = rows_[size_t(i)];
    row.resize(size_t(i) + 1);
    // sweep outward from the central binomial with exact ratios
    int64_t mc = i / 2;
    double pc = std::exp(log_binom(i, mc) - double(i) * 0.6931471805599453094172321215);
    row[size_t(mc)] = pc;
    double v = pc;
    for (int64_t m = mc + 1; m <= i; ++m) {
      v *= double(i - m + 1) / double(m);
      row[size_t(m)] = v;
    }
    v = pc;
    for (int64_t m = mc - 1; m >= 0; --m) {
      v *= double(m + 1) / double(i - m);
      row[size_t(m)] = v;
    }
  }
}

double SrwTable::operator()(int64_t i, int64_t j) const {
  if (i < 0 || i > n_ || ((i + j) & 1) != 0 || j < -i || j > i) return 0.0;
  return rows_[size_t(i)][size_t((i + j) / 2)];
}

double chaos_coefficient(int64_t n, int64_t y, const std::vector<ChaosSite>& z) {
  if (z.empty()) return srw_kernel(n, y);
  for (size_t q = 0; q + 1 < z.size(); ++q)
    if (!(z[q].first < z[q + 1].first))
      throw std::invalid_argument("chaos_coefficient: times must strictly increase");
  double c = std::pow(0.5, double(z.size())) * srw_kernel(z[0].first, z[0].second);
  for (size_t q = 0; q + 1 < z.size(); ++q) {
    int64_t di = z[q + 1].first - z[q].first - 1;
    int64_t dj = z[q + 1].second - z[q].second;
    c *= srw_kernel(di, dj - 1) - srw_kernel(di, dj + 1);
  }
  int64_t di = n - z.back().first - 1;
  int64_t dj = y - z.back().second;
  c *= srw_kernel(di, dj - 1) - srw_kernel(di, dj + 1);
  return c;
}

double chaos_reconstruct(const Environment& env, int64_t n, int64_t y) {
  if (n > 10) throw std::invalid_argument("chaos_reconstruct capped at n <= 10");
  if (((n + y) & 1) != 0 || y < -n || y > n) {
    // off-parity targets: every term carries an off-parity kernel factor
    return 0.0;
  }
  // sites ordered by time
  std::vector<ChaosSite> sites;
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = -i; j <= i; j += 2) sites.emplace_back(i, j);
  std::vector<double> S(sites.size());
  for (size_t a = 0; a < sites.size(); ++a) {
    auto [i, j] = sites[a];
    double inner = srw_kernel(i, j);
    for (size_t b = 0; b < a; ++b) {
      auto [ip, jp] = sites[b];
      if (ip >= i) break;  // sites sorted by time
      int64_t di = i - ip - 1, dj = j - jp;
      inner += S[b] * (srw_kernel(di, dj - 1) - srw_kernel(di, dj + 1));
    }
    double what = 2.0 * env.weight(i, j) - 1.0;
    S[a] = 0.5 * what * inner;
  }
  double total = srw_kernel(n, y);
  for (size_t a = 0; a < sites.size(); ++a) {
    auto [i, j] = sites[a];
    int64_t di = n - i - 1, dj = y - j;
    total += S[a] * (srw_kernel(di, dj - 1) - srw_kernel(di, dj + 1));
  }
  return total;
}

double chaos_term_l2(double N, double t, double x, double sigma2, int k) {
  int64_t n = int64_t(std::llround(N * t));
  int64_t y = int64_t(std::llround(std::pow(N, 0.75) * t + std::sqrt(N) * x));
  if (((n + y) & 1) != 0) y += 1;  // snap to the lattice parity
  double logC = std::pow(N, -0.25) * double(y) - double(n) * log_cosh(std::pow(N, -0.25));
  SrwTable p(n);
  auto dfin = [&](int64_t i, int64_t j) {
    return p(n - i - 1, y - j - 1) - p(n - i - 1, y - j + 1);
  };
  double sum = 0.0;
  if (k == 1) {
    for (int64_t i = 0; i < n; ++i)
      for (int64_t j = -i; j <= i; j += 2) {
        double c = 0.5 * p(i, j) * dfin(i, j);
        sum += c * c;
      }
  } else if (k == 2) {
    if (n > 320) throw std::invalid_argument("chaos_term_l2 k=2 capped at Nt <= 320");
    for (int64_t i2 = 1; i2 < n; ++i2)
      for (int64_t j2 = -i2; j2 <= i2; j2 += 2) {
        double d2 = dfin(i2, j2);
        if (d2 == 0.0) continue;
        double inner = 0.0;
        for (int64_t i1 = 0; i1 < i2; ++i1) {
          int64_t di = i2 - i1 - 1;
          int64_t lo = std::max(-i1, j2 - di - 1), hi = std::min(i1, j2 + di + 1);
          for (int64_t j1 = lo; j1 <= hi; ++j1) {
            if (((i1 + j1) & 1) != 0) continue;
            double d = p(di, j2 - j1 - 1) - p(di, j2 - j1 + 1);
            double pp = p(i1, j1);
            inner += pp * pp * d * d;
          }
        }
        sum += 0.0625 * d2 * d2 * inner;
      }
  } else {
    throw std::invalid_argument("chaos_term_l2 supports k = 1, 2");
  }
  return std::exp(2.0 * logC) * std::pow(4.0 * sigma2 / N, double(k)) * sum;
}

double chaos_term_sample(const Environment& env, double N, double t, double x, int k) {
  int64_t n = int64_t(std::llround(N * t));
  int64_t y = int64_t(std::llround(std::pow(N, 0.75) * t + std::sqrt(N) * x));
  if (((n + y) & 1) != 0) y += 1;
  double logC = std::pow(N, -0.25) * double(y) - double(n) * log_cosh(std::pow(N, -0.25));
  SrwTable p(n);
  auto dfin = [&](int64_t i, int64_t j) {
    return p(n - i - 1, y - j - 1) - p(n - i - 1, y - j + 1);
  };
  double sum = 0.0;
  if (k == 1) {
    for (int64_t i = 0; i < n; ++i)
      for (int64_t j = -i; j <= i; j += 2) {
        double what = 2.0 * env.weight(i, j) - 1.0;
        sum += 0.5 * p(i, j) * dfin(i, j) * what;
      }
  } else if (k == 2) {
    if (n > 48) throw std::invalid_argument("chaos_term_sample k=2 capped at Nt <= 48");
    for (int64_t i2 = 1; i2 < n; ++i2)
      for (int64_t j2 = -i2; j2 <= i2; j2 += 2) {
        double d2 = dfin(i2, j2);
        if (d2 == 0.0) continue;
        double w2 = 2.0 * env.weight(i2, j2) - 1.0;
        double inner = 0.0;
        for (int64_t i1 = 0; i1 < i2; ++i1)
          for (int64_t j1 = -i1; j1 <= i1; j1 += 2) {
            int64_t di = i2 - i1 - 1;
            double d = p(di, j2 - j1 - 1) - p(di, j2 - j1 + 1);
            if (d == 0.0) continue;
            inner += p(i1, j1) * (2.0 * env.weight(i1, j1) - 1.0) * d;
          }
        sum += 0.25 * w2 * d2 * inner;
      }
  } else {
    throw std::invalid_argument("chaos_term_sample supports k = 1, 2");
  }
  return std::exp(logC) * std::pow(N, -0.5 * double(k)) * sum;
}

double chaos_term1_l2_limit(double t, double x, double sigma2) {
  return 2.0 * sigma2 * std::exp(-x * x / t) / std::sqrt(M_PI * t);
}

PairTransfer::PairTransfer(const EnvSpec& nu, double N) : nu_(nu), s_(N) {
  d_.assign(1, 1.0);
}

void PairTransfer::advance_to(int64_t r_target) {
  const double lam = s_.inv14;
  const double rho = s_.rho, omr = 1.0 - s_.rho;
  const double ch2 = std::cosh(lam) * std::cosh(lam);
  const double uu = nu_.moment(2, 0) * std::exp(2.0 * lam) / ch2;
  const double ud = nu_.moment(1, 1) / ch2;
  const double dd = nu_.moment(0, 2) * std::exp(-2.0 * lam) / ch2;
  while (r_ < r_target) {
    const int64_t n = r_ + 1;      // sites per axis at time r_
    const int64_t m = n + 1;       // at time r_+1
    next_.assign(size_t(m * m), 0.0);
    for (int64_t i1 = 0; i1 < n; ++i1) {
      for (int64_t i2 = 0; i2 < n; ++i2) {
        double v = d_[size_t(i1 * n + i2)];
        if (v == 0.0) continue;
        double* out = next_.data();
        if (i1 != i2) {
          out[(i1 + 1) * m + (i2 + 1)] += v * rho * rho;
          out[(i1 + 1) * m + i2] += v * rho * omr;
          out[i1 * m + (i2 + 1)] += v * omr * rho;
          out[i1 * m + i2] += v * omr * omr;
        } else {
          out[(i1 + 1) * m + (i2 + 1)] += v * uu;
          out[(i1 + 1) * m + i2] += v * ud;
          out[i1 * m + (i2 + 1)] += v * ud;
          out[i1 * m + i2] += v * dd;
        }
      }
    }
    for (double& v : next_)
      if (v < kDensityFloor) v = 0.0;
    d_.swap(next_);
    r_ += 1;
  }
}

double PairTransfer::field_second_moment(const TestFunction& phi) const {
  const int64_t n = r_ + 1;
  std::vector<double> f(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) f[size_t(i)] = phi(s_.x_of(r_, -r_ + 2 * i));
  double total = 0.0;
  for (int64_t i1 = 0; i1 < n; ++i1) {
    double row = 0.0;
    const double* d = d_.data() + i1 * n;
    for (int64_t i2 = 0; i2 < n; ++i2) row += d[i2] * f[size_t(i2)];
    total += f[size_t(i1)] * row;
  }
  return total;
}

double PairTransfer::point_second_moment(int64_t y) const {
  const int64_t n = r_ + 1;
  int64_t i = (y + r_) / 2;
  if (((y + r_) & 1) != 0 || i < 0 || i >= n) return 0.0;
  return d_[size_t(i * n + i)];
}

}  // namespace rwlab
