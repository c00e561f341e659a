#include "rwlab/oracle.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "rwlab/kpoint.hpp"
#include "rwlab/qkernel.hpp"
#include "rwlab/special.hpp"

namespace rwlab {

namespace {

void check_caps(int k, int r) {
  if (k < 1 || k > 3 || r < 0 || r > 4)
    throw std::invalid_argument("enumeration oracle capped at k <= 3, r <= 4");
}

// Recursive sum over move patterns under the annealed cluster law.
double annealed_rec(const EnvSpec& spec, int r_left,
                    std::vector<std::vector<int64_t>>& path, double prob,
                    const PathFunctional& F) {
  if (r_left == 0) return prob * F(path);
  const std::vector<int64_t> pos = path.back();  // copy: push_back reallocates
  const int k = int(pos.size());
  Clusters cl = clusters_of(pos);
  double total = 0.0;
  // enumerate each particle's move; pattern probability factorizes over
  // clusters as m[b][n-b] per cluster (b = up-count of that cluster)
  const int patterns = 1 << k;
  for (int m = 0; m < patterns; ++m) {
    double p = 1.0;
    for (int j = 0; j < cl.count(); ++j) {
      int n = cl.size[size_t(j)], b = 0;
      for (int q : cl.members[size_t(j)])
        if (m & (1 << q)) ++b;
      p *= spec.moment(b, n - b);
    }
    if (p == 0.0) continue;
    std::vector<int64_t> next(pos);
    for (int q = 0; q < k; ++q) next[size_t(q)] += (m & (1 << q)) ? 1 : -1;
    path.push_back(std::move(next));
    total += annealed_rec(spec, r_left - 1, path, prob * p, F);
    path.pop_back();
  }
  return total;
}

struct Cone {
  // reachable sites (s, y), s < r; index into the assignment vector
  std::map<std::pair<int, int64_t>, size_t> index;
  std::vector<std::pair<int, int64_t>> sites;
};

Cone cone_sites(int r) {
  Cone c;
  for (int s = 0; s < r; ++s)
    for (int64_t y = -s; y <= s; y += 2) {
      c.index[{s, y}] = c.sites.size();
      c.sites.emplace_back(s, y);
    }
  return c;
}

double quenched_paths_rec(const Cone& cone, const std::vector<double>& w, int r_total,
                          int r_left, std::vector<std::vector<int64_t>>& path,
                          double prob, const PathFunctional& F) {
  if (r_left == 0) return prob * F(path);
  const std::vector<int64_t> pos = path.back();  // copy: push_back reallocates
  const int k = int(pos.size());
  const int s = r_total - r_left;
  const int patterns = 1 << k;
  double total = 0.0;
  for (int m = 0; m < patterns; ++m) {
    double p = 1.0;
    for (int q = 0; q < k; ++q) {
      double omega = w[cone.index.at({s, pos[size_t(q)]})];
      p *= (m & (1 << q)) ? omega : 1.0 - omega;
      if (p == 0.0) break;
    }
    if (p == 0.0) continue;
    std::vector<int64_t> next(pos);
    for (int q = 0; q < k; ++q) next[size_t(q)] += (m & (1 << q)) ? 1 : -1;
    path.push_back(std::move(next));
    total += quenched_paths_rec(cone, w, r_total, r_left - 1, path, prob * p, F);
    path.pop_back();
  }
  return total;
}

// Iterate over atom assignments of the cone, calling body(weights, prob).
template <class Body>
void for_each_environment(const EnvSpec& spec, const Cone& cone, Body&& body) {
  if (!spec.finite_support())
    throw std::invalid_argument("quenched enumeration needs a finite-support spec");
  auto pts = spec.atoms();
  const size_t S = cone.sites.size(), A = pts.size();
  std::vector<size_t> digit(S, 0);
  std::vector<double> w(S);
  while (true) {
    double p = 1.0;
    for (size_t i = 0; i < S; ++i) {
      w[i] = pts[digit[i]].first;
      p *= pts[digit[i]].second;
    }
    body(w, p);
    size_t i = 0;
    for (; i < S; ++i) {
      if (++digit[i] < A) break;
      digit[i] = 0;
    }
    if (i == S) break;
  }
}

}  // namespace

double annealed_expectation(const EnumerationTask& task, const PathFunctional& F) {
  check_caps(task.k, task.r);
  std::vector<std::vector<int64_t>> path{std::vector<int64_t>(size_t(task.k), 0)};
  return annealed_rec(task.spec, task.r, path, 1.0, F);
}

double quenched_expectation(const EnumerationTask& task, const PathFunctional& F) {
  check_caps(task.k, task.r);
  Cone cone = cone_sites(task.r);
  double total = 0.0;
  for_each_environment(task.spec, cone, [&](const std::vector<double>& w, double pe) {
    std::vector<std::vector<int64_t>> path{std::vector<int64_t>(size_t(task.k), 0)};
    total += pe * quenched_paths_rec(cone, w, task.r, task.r, path, 1.0, F);
  });
  return total;
}

double enumerated_mass(const EnumerationTask& task, bool quenched_route) {
  auto one = [](const std::vector<std::vector<int64_t>>&) { return 1.0; };
  return quenched_route ? quenched_expectation(task, one)
                        : annealed_expectation(task, one);
}

double quenched_field_moment(const EnvSpec& spec, double N, int r, int kpow,
                             const TestFunction& phi) {
  if (spec.finite_support() && spec.atoms().size() > 1 && r > 4)
    throw std::invalid_argument("quenched_field_moment capped at r <= 4");
  Cone cone = cone_sites(r);
  Scaling s(N);
  double total = 0.0;
  for_each_environment(spec, cone, [&](const std::vector<double>& w, double pe) {
    // quenched density DP inside this enumerated environment
    std::map<int64_t, double> p{{0, 1.0}};
    for (int step = 0; step < r; ++step) {
      std::map<int64_t, double> np;
      for (auto& [y, mass] : p) {
        double omega = w[cone.index.at({step, y})];
        np[y + 1] += omega * mass;
        np[y - 1] += (1.0 - omega) * mass;
      }
      p.swap(np);
    }
    double u = 0.0;
    for (auto& [y, mass] : p) {
      double x = s.x_of(r, y);
      u += std::exp(constant_log_c(N, double(r) / N, x)) * mass * phi(x);
    }
    total += pe * std::pow(u, kpow);
  });
  return total;
}

double annealed_field_moment(const EnvSpec& spec, double N, int r, int k,
                             const TestFunction& phi) {
  Scaling s(N);
  EnumerationTask task{k, r, spec};
  return annealed_expectation(task, [&](const std::vector<std::vector<int64_t>>& path) {
    double prod = 1.0;
    for (int64_t y : path.back()) {
      double x = s.x_of(r, y);
      prod *= std::exp(constant_log_c(N, double(r) / N, x)) * phi(x);
    }
    return prod;
  });
}

double one_step_conditional(const EnvSpec& spec, const std::vector<int64_t>& pos,
                            const std::function<double(const std::vector<int>&)>& F) {
  const int k = int(pos.size());
  Clusters cl = clusters_of(pos);
  const int patterns = 1 << k;
  double total = 0.0;
  for (int m = 0; m < patterns; ++m) {
    double p = 1.0;
    for (int j = 0; j < cl.count(); ++j) {
      int n = cl.size[size_t(j)], b = 0;
      for (int q : cl.members[size_t(j)])
        if (m & (1 << q)) ++b;
      p *= spec.moment(b, n - b);
    }
    if (p == 0.0) continue;
    std::vector<int> mv(static_cast<size_t>(k));
    for (int q = 0; q < k; ++q) mv[size_t(q)] = (m & (1 << q)) ? 1 : -1;
    total += p * F(mv);
  }
  return total;
}

}  // namespace rwlab
