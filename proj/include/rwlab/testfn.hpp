#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace rwlab {

// Spatial test functions paired against the density fields.
//
//  gauss-bump   xi_eps^a(x) = (eps*sqrt(pi))^{-1} exp(-((x-a)/eps)^2), mass 1
//  smooth-bump  h * exp(-1/(1-u^2)) on |u|<1, u = (x-c)/w          (C^inf)
//  indicator    1_{[lo,hi]}                                          (bounded)
//  poly-window  h * (1-u^2)^3 on |u|<1                               (C^2)
struct TestFunction {
  enum Kind { GaussBump, SmoothBump, Indicator, PolyWindow } kind = GaussBump;
  double a = 0.0, eps = 1.0;   // gauss-bump
  double c = 0.0, w = 1.0, h = 1.0;  // bumps / window
  double lo = -1.0, hi = 1.0;  // indicator

  double operator()(double x) const {
    switch (kind) {
      case GaussBump: {
        double u = (x - a) / eps;
        return std::exp(-u * u) / (eps * 1.7724538509055160273);
      }
      case SmoothBump: {
        double u = (x - c) / w;
        if (std::fabs(u) >= 1.0) return 0.0;
        return h * std::exp(-1.0 / (1.0 - u * u));
      }
      case Indicator: return (x >= lo && x <= hi) ? 1.0 : 0.0;
      case PolyWindow: {
        double u = (x - c) / w;
        if (std::fabs(u) >= 1.0) return 0.0;
        double q = 1.0 - u * u;
        return h * q * q * q;
      }
    }
    return 0.0;
  }

  double sup_norm() const {
    switch (kind) {
      case GaussBump: return 1.0 / (eps * 1.7724538509055160273);
      case SmoothBump: return h * std::exp(-1.0);
      case Indicator: return 1.0;
      case PolyWindow: return h;
    }
    return 0.0;
  }

  // sup|phi'|; the smooth-bump constant is max_u |2u/(1-u^2)^2 e^{-1/(1-u^2)}|,
  // frozen from a one-time golden-section maximization.
  double deriv_sup_norm() const {
    switch (kind) {
      case GaussBump:
        // max of |2u e^{-u^2}|/ (eps^2 sqrt(pi)) at u = 1/sqrt(2)
        return std::sqrt(2.0) * std::exp(-0.5) / (eps * eps * 1.7724538509055160273);
      case SmoothBump: return h * 0.7984297518335994 / w;
      case Indicator: return std::numeric_limits<double>::infinity();
      case PolyWindow: return h * (96.0 / (25.0 * std::sqrt(5.0))) / w;
    }
    return 0.0;
  }

  bool is_c1() const { return kind != Indicator; }
  double c1_norm() const { return sup_norm() + deriv_sup_norm(); }

  // Radius A with phi supported in [-A, A] (windowed kinds), or the radius
  // beyond which |phi| < 1e-300 (gauss-bump).
  double support_radius() const {
    switch (kind) {
      case GaussBump: return std::fabs(a) + 27.0 * eps;
      case SmoothBump: return std::fabs(c) + w;
      case Indicator: return std::fmax(std::fabs(lo), std::fabs(hi));
      case PolyWindow: return std::fabs(c) + w;
    }
    return 0.0;
  }

  std::string name() const {
    char buf[96];
    switch (kind) {
      case GaussBump: std::snprintf(buf, sizeof buf, "gauss-bump{a=%g,eps=%g}", a, eps); break;
      case SmoothBump: std::snprintf(buf, sizeof buf, "smooth-bump{c=%g,w=%g,h=%g}", c, w, h); break;
      case Indicator: std::snprintf(buf, sizeof buf, "indicator{%g,%g}", lo, hi); break;
      case PolyWindow: std::snprintf(buf, sizeof buf, "poly-window{c=%g,w=%g,h=%g}", c, w, h); break;
    }
    return buf;
  }

  static TestFunction gauss(double a, double eps) {
    TestFunction f;
    f.kind = GaussBump;
    f.a = a;
    f.eps = eps;
    return f;
  }
  static TestFunction indicator(double lo, double hi) {
    TestFunction f;
    f.kind = Indicator;
    f.lo = lo;
    f.hi = hi;
    return f;
  }
  static TestFunction smooth_bump(double c, double w, double h = 1.0) {
    TestFunction f;
    f.kind = SmoothBump;
    f.c = c;
    f.w = w;
    f.h = h;
    return f;
  }
  static TestFunction poly_window(double c, double w, double h = 1.0) {
    TestFunction f;
    f.kind = PolyWindow;
    f.c = c;
    f.w = w;
    f.h = h;
    return f;
  }
};

}  // namespace rwlab
