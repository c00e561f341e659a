#pragma once

#include <functional>
#include <vector>

#include "rwlab/env.hpp"
#include "rwlab/testfn.hpp"

// Ground-truth engine: exact summation over all weight assignments and all
// move patterns at tiny sizes (k <= 3 particles, r <= 4 steps).  Everything
// here is a literal finite sum; no sampling, no approximation beyond
// double rounding.

namespace rwlab {

// path[s][j] = position of particle j after s steps; path[0] = 0.
using PathFunctional = std::function<double(const std::vector<std::vector<int64_t>>&)>;

struct EnumerationTask {
  int k = 2;
  int r = 2;
  EnvSpec spec;  // finite-support kinds only for the quenched route
};

// Annealed expectation E_{RW^{(k)}_nu}[F]: move patterns weighted by the
// cluster-moment probabilities.
double annealed_expectation(const EnumerationTask& task, const PathFunctional& F);

// Same expectation through the quenched route: enumerate every weight
// assignment on the reachable cone, then every move pattern with its
// per-site probability.  Must agree with annealed_expectation to ~1e-14.
double quenched_expectation(const EnumerationTask& task, const PathFunctional& F);

// Total enumerated mass (F = 1); equals 1 up to rounding.
double enumerated_mass(const EnumerationTask& task, bool quenched_route);

// Exact E[U_N(t, phi)^kpow] with r = N t lattice steps, computed by running
// the quenched density DP inside every enumerated environment.
double quenched_field_moment(const EnvSpec& spec, double N, int r, int kpow,
                             const TestFunction& phi);

// Exact annealed E[U_N(t, phi)^k] via the k-point representation
// E[prod_j C phi(X^j)] on the same lattice horizon.
double annealed_field_moment(const EnvSpec& spec, double N, int r, int k,
                             const TestFunction& phi);

// Exact one-step conditional expectation of a function of the moves, from a
// given particle configuration: sum over move patterns of
// prob * F(moves), moves in {-1,+1}^k.
double one_step_conditional(const EnvSpec& spec, const std::vector<int64_t>& pos,
                            const std::function<double(const std::vector<int>&)>& F);

}  // namespace rwlab
