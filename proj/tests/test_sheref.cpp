#include <cmath>

#include "doctest.h"
#include "rwlab/sheref.hpp"
#include "rwlab/stats.hpp"

using namespace rwlab;

namespace {

// Independent oracle for the coincident two-point moment: for bridges
// 0 -> x on [0,t] the difference is a rate-2 bridge pinned at zero, whose
// local time at 0 is sqrt(2t) R with R Rayleigh.  Hence
//   E[U_t(x)^2] = p_t(x)^2 E[e^{(gamma^2/2) sqrt(2t) R}],
//   E[e^{aR}] = 1 + a e^{a^2/2} sqrt(pi/2) (1 + erf(a/sqrt(2))).
double coincident_moment_rayleigh(double t, double x, double gamma) {
  double a = 0.5 * gamma * gamma * std::sqrt(2.0 * t);
  double e = 1.0 + a * std::exp(0.5 * a * a) * std::sqrt(M_PI / 2.0) *
                       (1.0 + std::erf(a / std::sqrt(2.0)));
  double p = heat_kernel(t, x);
  return p * p * e;
}

}  // namespace

TEST_CASE("heat kernel") {
  CHECK(heat_kernel(1.0, 0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
  CHECK_THROWS(heat_kernel(0.0, 1.0));
  CHECK_THROWS(heat_kernel(-1.0, 0.0));
  // normalization by Simpson quadrature
  for (double t : {0.5, 1.0, 3.0}) {
    double acc = 0.0;
    const int n = 4000;
    double L = 12.0 * std::sqrt(t), h = 2.0 * L / n;
    for (int i = 0; i <= n; ++i) {
      double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += w * heat_kernel(t, -L + h * i);
    }
    acc *= h / 3.0;
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-10));
  }
  // parabolic scaling
  CHECK(heat_kernel(4.0, 2.0) ==
        doctest::Approx(heat_kernel(1.0, 1.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("gamma coefficient") {
  CHECK(gamma_coeff(0.0) == 0.0);
  CHECK(gamma_coeff(0.125) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // Beta(alpha,alpha): sigma2 = 1/(4(2a+1)), gamma^2 = 1/alpha
  for (double alpha : {0.5, 1.0, 2.0}) {
    double s2 = 1.0 / (4.0 * (2.0 * alpha + 1.0));
    double g = gamma_coeff(s2);
    CHECK(g * g == doctest::Approx(1.0 / alpha).epsilon(1e-13));
  }
  CHECK_THROWS(gamma_coeff(0.25));
}

TEST_CASE("two-point contour integral") {
  SUBCASE("real-valued and symmetric in (x,y)") {
    for (double t : {0.5, 1.0}) {
      for (double x : {-0.5, 0.0, 1.0}) {
        auto v = two_point_contour(t, x, 0.3, 1.0);
        CHECK(v.error < 1e-7);
        auto w = two_point_contour(t, 0.3, x, 1.0);
        CHECK(v.value == doctest::Approx(w.value).epsilon(1e-8));
      }
    }
  }
  SUBCASE("matches the Rayleigh closed form at coinciding points") {
    for (double alpha : {1.0, 1.5, 3.0}) {
      double gamma = std::sqrt(1.0 / alpha);
      for (double t : {0.5, 1.0}) {
        for (double x : {0.0, 0.7}) {
          auto v = two_point_contour(t, x, x, alpha);
          double expect = coincident_moment_rayleigh(t, x, gamma);
          CHECK(v.value == doctest::Approx(expect).epsilon(1e-7));
        }
      }
    }
  }
  SUBCASE("large alpha approaches the product of heat kernels") {
    auto v = two_point_contour(1.0, 0.2, -0.4, 400.0);
    CHECK(v.value ==
          doctest::Approx(heat_kernel(1.0, 0.2) * heat_kernel(1.0, -0.4)).epsilon(2e-3));
  }
  SUBCASE("contour placement invariance") {
    // implementation chooses contours internally; shifting x,y by equal
    // amounts with the Gaussian recentered is a strong invariance proxy,
    // exercised through symmetry + the closed form above. Here: repeat
    // evaluation at a shifted gap configuration.
    auto a = two_point_contour(1.0, 0.0, 0.0, 1.0);
    auto b = two_point_contour(1.0, 1e-9, -1e-9, 1.0);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-7));
  }
}

TEST_CASE("bridge-MC moment") {
  SUBCASE("k=1 and gamma=0 are closed-form") {
    auto v = she_moment_bridge_mc(1, 1.0, {0.3}, 1.0, {});
    CHECK(v.value == doctest::Approx(heat_kernel(1.0, 0.3)).epsilon(1e-14));
    CHECK(v.error == 0.0);
    auto w = she_moment_bridge_mc(2, 1.0, {0.1, 0.4}, 0.0, {});
    CHECK(w.value ==
          doctest::Approx(heat_kernel(1.0, 0.1) * heat_kernel(1.0, 0.4)).epsilon(1e-14));
  }
  SUBCASE("k=2 coincident case against the Rayleigh oracle") {
    BridgeMcParams prm;
    prm.paths = 8000;
    prm.steps = 2048;
    prm.delta = 0.2;
    prm.seed = 17;
    auto v = she_moment_bridge_mc(2, 1.0, {0.0, 0.0}, 1.0, prm);
    double expect = coincident_moment_rayleigh(1.0, 0.0, 1.0);
    CHECK(std::fabs(v.value - expect) < 3.0 * v.error + 0.02 * expect);
  }
  SUBCASE("refinement stability: (delta, dt) vs (delta/2, dt/2)") {
    BridgeMcParams a;
    a.paths = 6000;
    a.steps = 1024;
    a.delta = 0.3;
    a.seed = 23;
    BridgeMcParams b = a;
    b.steps = 2048;
    b.delta = 0.15;
    b.seed = 24;
    auto va = she_moment_bridge_mc(2, 1.0, {0.0, 0.0}, 1.0, a);
    auto vb = she_moment_bridge_mc(2, 1.0, {0.0, 0.0}, 1.0, b);
    CHECK(std::fabs(va.value - vb.value) < 3.0 * (va.error + vb.error) + 0.02 * va.value);
  }
  SUBCASE("cross-validation against the contour at (1, 0, 0, alpha=1)") {
    BridgeMcParams prm;
    prm.paths = 8000;
    prm.steps = 2048;
    prm.delta = 0.2;
    prm.seed = 31;
    auto mc = she_moment_bridge_mc(2, 1.0, {0.0, 0.0}, 1.0, prm);
    auto ct = two_point_contour(1.0, 0.0, 0.0, 1.0);
    CHECK(std::fabs(mc.value - ct.value) < 3.0 * (mc.error + ct.error) + 0.02 * ct.value);
  }
}

TEST_CASE("extreme reference") {
  ExtremeReference ref;
  ref.c = 1.0;
  ref.d = 0.0;
  ref.t = 1.0;
  // k(256) = floor(e^8) = 2980
  CHECK(ExtremeReference::k_of(256.0, 1.0, 0.0, 0.0) == 2980);
  // a_N has leading sqrt(c t N)
  for (double N : {1024.0, 65536.0})
    CHECK(ref.a_n(N) / std::sqrt(N) == doctest::Approx(1.0).epsilon(0.2));
  // sigma=0 limit: Gumbel + 1/6 + log p_1(0)
  CHECK(ref.sigma0_offset() == doctest::Approx(std::log(heat_kernel(1.0, 0.0))));
  CHECK(ref.gumbel_shift() == doctest::Approx(1.0 / 6.0));
  // sampler against its own CDF via KS on a big sample
  std::vector<double> sample;
  for (int i = 0; i < 40000; ++i)
    sample.push_back(ref.sigma0_sample((i + 0.5) / 40000.0));
  double ks = ks_distance(sample, [&](double z) { return ref.sigma0_cdf(z); });
  CHECK(ks < 0.002);
  // Gumbel moments: mean = Euler-Mascheroni, var = pi^2/6
  Moments m;
  for (int i = 0; i < 200000; ++i) m.add(gumbel_sample((i + 0.5) / 200000.0));
  CHECK(m.mean == doctest::Approx(0.5772156649).epsilon(1e-3));
  CHECK(m.variance() == doctest::Approx(kGumbelVariance).epsilon(5e-3));
}
