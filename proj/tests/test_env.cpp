#include <cmath>
#include <vector>

#include "doctest.h"
#include "rwlab/env.hpp"
#include "rwlab/special.hpp"

using namespace rwlab;

namespace {

// Adaptive Simpson test oracle for the continuous-spec moment tables.
template <class F>
double simpson(F f, double a, double b, double fa, double fm, double fb, double eps,
               int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15 * eps)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, eps / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, eps / 2, depth - 1);
}

template <class F>
double integrate(F f, double a, double b, double eps = 1e-13) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, eps, 40);
}

// Quadrature oracle for the moment table of min(1, w+d), w ~ Beta(alpha,alpha),
// written with the x = sin^2(theta) substitution so endpoint singularities
// (alpha < 1) stay integrable.
double shifted_beta_moment_quad(double alpha, double d, int b, int c) {
  double lb = log_beta(alpha, alpha);
  auto g = [&](double theta) {
    double sn = std::sin(theta), cs = std::cos(theta);
    double x = sn * sn, omx = cs * cs;  // 1-x without cancellation
    double w = std::min(1.0, x + d);
    double omw = std::max(0.0, omx - d);
    double density =
        std::exp(2.0 * (alpha - 1) * std::log(sn) + 2.0 * (alpha - 1) * std::log(cs) - lb);
    return std::pow(w, b) * std::pow(omw, c) * density * 2.0 * sn * cs;
  };
  return integrate(g, 1e-9, M_PI / 2 - 1e-9);
}

}  // namespace

TEST_CASE("make_spec moments") {
  auto tp = make_spec(Dist::TwoPoint, 0.25);
  CHECK(tp.mu == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tp.sigma2 == doctest::Approx(1.0 / 16.0).epsilon(1e-14));

  // uniform variance against direct integration of x^2 on [0,1] minus 1/4
  auto un = make_spec(Dist::Uniform);
  double ex2 = integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(un.sigma2 == doctest::Approx(ex2 - 0.25).epsilon(1e-12));
  auto beta1 = make_spec(Dist::Beta, 1.0);
  CHECK(beta1.sigma2 == doctest::Approx(1.0 / 12.0).epsilon(1e-12));

  auto br = make_spec(Dist::BernoulliHalf);
  CHECK(br.sigma2 == doctest::Approx(0.25).epsilon(1e-14));

  CHECK_THROWS(make_spec(Dist::TwoPoint, 0.6));
  CHECK_THROWS(make_spec(Dist::Beta, -1.0));
  CHECK_THROWS(make_spec(Dist::Beta, 0.0));
}

TEST_CASE("moment tables satisfy the Pascal consistency m[b][c] = m[b+1][c] + m[b][c+1]") {
  std::vector<EnvSpec> specs = {make_spec(Dist::DegenerateHalf),
                                make_spec(Dist::TwoPoint, 0.25),
                                make_spec(Dist::Uniform),
                                make_spec(Dist::Beta, 2.0),
                                make_spec(Dist::Beta, 0.5),
                                make_spec(Dist::BernoulliHalf),
                                skewed_spec(make_spec(Dist::Uniform), 256.0),
                                skewed_spec(make_spec(Dist::TwoPoint, 0.25), 256.0)};
  for (const auto& s : specs) {
    CHECK(s.moment(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.moment(1, 0) + s.moment(0, 1) == doctest::Approx(1.0).epsilon(1e-13));
    for (int b = 0; b + 1 <= kMomentMax; ++b)
      for (int c = 0; b + c + 1 <= kMomentMax; ++c)
        CHECK(s.moment(b, c) ==
              doctest::Approx(s.moment(b + 1, c) + s.moment(b, c + 1)).epsilon(1e-12));
  }
}

TEST_CASE("rho_n closed form and expansion") {
  CHECK(rho_n(16.0) == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))).epsilon(1e-15));
  CHECK(rho_n(1.0) == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))).epsilon(1e-15));
  for (double N : {256.0, 4096.0, 65536.0}) {
    double h = std::pow(N, -0.25);
    // rho - 1/2 - h/2 = (tanh h - h)/2 = -h^3/6 + O(h^5)
    CHECK(std::fabs(rho_n(N) - 0.5 - 0.5 * h) < 0.2 * std::pow(N, -0.75));
  }
}

TEST_CASE("weights are deterministic and marginally correct") {
  Environment env{12345, make_spec(Dist::TwoPoint, 0.25)};
  CHECK(env.weight(3, 1) == env.weight(3, 1));
  Environment env2{12345, env.spec};
  CHECK(env.weight(7, -3) == env2.weight(7, -3));

  Environment dg{999, make_spec(Dist::DegenerateHalf)};
  CHECK(dg.weight(0, 0) == 0.5);
  CHECK(dg.weight(100, -42) == 0.5);

  // two-point{a}: both values hit with frequency 1/2 within 4 SE over 10^6
  int64_t n = 1000000, hi = 0;
  for (int64_t i = 0; i < n; ++i) {
    double w = env.weight(i % 1000, (i / 1000) * 2 - 1000 + (i % 1000) % 2);
    CHECK((w == 0.25 || w == 0.75));
    if (w == 0.75) ++hi;
  }
  double freq = double(hi) / double(n);
  CHECK(std::fabs(freq - 0.5) < 4.0 * std::sqrt(0.25 / double(n)));
}

TEST_CASE("weight_row matches single-site weights bitwise") {
  for (auto spec : {make_spec(Dist::Uniform), make_spec(Dist::TwoPoint, 0.1),
                    make_spec(Dist::Beta, 2.0)}) {
    Environment env{77, spec};
    for (int64_t t : {0, 1, 5, 100}) {
      size_t n = size_t(t) + 1;
      std::vector<double> row(n);
      env.weight_row(t, -t, n, row.data());
      for (size_t i = 0; i < n; ++i)
        CHECK(row[i] == env.weight(t, -t + 2 * int64_t(i)));
    }
  }
}

TEST_CASE("skewed_spec") {
  SUBCASE("degenerate base: no clipping, d = rho - 1/2") {
    for (double N : {16.0, 256.0, 65536.0}) {
      auto sk = skewed_spec(make_spec(Dist::DegenerateHalf), N);
      CHECK(sk.mu == doctest::Approx(rho_n(N)).epsilon(1e-12));
      CHECK(sk.shift == doctest::Approx(rho_n(N) - 0.5).epsilon(1e-11));
      CHECK(sk.sigma2 == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
  SUBCASE("two-point base at N=256: bisection agrees with the closed form") {
    auto sk = skewed_spec(make_spec(Dist::TwoPoint, 0.25), 256.0);
    CHECK(sk.shift == doctest::Approx(rho_n(256.0) - 0.5).epsilon(1e-11));
    CHECK(0.75 + sk.shift < 1.0);  // no clipping occurred
  }
  SUBCASE("mean equals rho_N to 1e-10 for every kind and N = 2^4..2^16") {
    std::vector<EnvSpec> bases = {make_spec(Dist::DegenerateHalf),
                                  make_spec(Dist::TwoPoint, 0.25),
                                  make_spec(Dist::Uniform), make_spec(Dist::Beta, 2.0),
                                  make_spec(Dist::BernoulliHalf)};
    for (const auto& base : bases)
      for (int p = 4; p <= 16; p += 4) {
        double N = std::pow(2.0, p);
        auto sk = skewed_spec(base, N);
        CHECK(std::fabs(sk.mu - rho_n(N)) < 1e-10);
      }
  }
  SUBCASE("skewed variance approaches the base variance") {
    auto base = make_spec(Dist::Uniform);
    double d1 = std::fabs(skewed_spec(base, 256.0).sigma2 - base.sigma2);
    double d2 = std::fabs(skewed_spec(base, 4096.0).sigma2 - base.sigma2);
    CHECK(d2 < d1);
    CHECK(d2 < 0.01);
  }
  SUBCASE("unreachable mean is rejected") {
    CHECK_THROWS(skewed_spec(make_spec(Dist::TwoPoint, 0.25), 1.0));
  }
  SUBCASE("continuous-table closed form matches quadrature") {
    for (double alpha : {1.0, 2.0, 0.5}) {
      auto sk = skewed_spec(make_spec(Dist::Beta, alpha), 256.0);
      for (int b = 0; b <= 4; ++b)
        for (int c = 0; b + c <= 4; ++c) {
          double q = shifted_beta_moment_quad(alpha, sk.shift, b, c);
          CHECK(sk.moment(b, c) == doctest::Approx(q).epsilon(1e-9));
        }
    }
  }
}

TEST_CASE("beta sampling matches its moment table") {
  auto spec = make_spec(Dist::Beta, 2.0);
  Environment env{4242, spec};
  const int64_t n = 200000;
  double s1 = 0, s2 = 0;
  for (int64_t i = 0; i < n; ++i) {
    double w = env.weight(0, 2 * i);
    s1 += w;
    s2 += w * w;
  }
  double mean = s1 / double(n), m2 = s2 / double(n);
  CHECK(std::fabs(mean - spec.mu) < 4.0 * std::sqrt(spec.sigma2 / double(n)));
  double var_x2 = spec.moment(4, 0) - spec.moment(2, 0) * spec.moment(2, 0);
  CHECK(std::fabs(m2 - spec.moment(2, 0)) < 4.0 * std::sqrt(var_x2 / double(n)));
}
