#include "rwlab/kpoint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwlab/special.hpp"

namespace rwlab {

double g_fn(double lambda, double sigma2) {
  if (!(sigma2 >= 0.0 && sigma2 <= 0.25))
    throw std::invalid_argument("g_fn: sigma2 must lie in [0, 1/4]");
  double c = 0.5 * (1.0 + 4.0 * sigma2);
  // log(c cosh 2l + (1-c)) - 2 log cosh l, written via log1p around cosh^2:
  // cosh^2 l = (cosh 2l + 1)/2, so the argument is cosh^2 l + (c-1/2)(cosh 2l - 1).
  double ch2 = std::cosh(2.0 * lambda);
  double lc = log_cosh(lambda);
  return std::log(c * ch2 + (1.0 - c)) - 2.0 * lc;
}

Clusters clusters_of(const std::vector<int64_t>& pos) {
  const int k = int(pos.size());
  std::vector<int> order(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) order[size_t(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return pos[size_t(a)] < pos[size_t(b)]; });
  Clusters cl;
  for (int idx = 0; idx < k; ++idx) {
    int p = order[size_t(idx)];
    if (cl.count() == 0 || pos[size_t(p)] != cl.site.back()) {
      cl.site.push_back(pos[size_t(p)]);
      cl.size.push_back(0);
      cl.members.emplace_back();
    }
    cl.size.back() += 1;
    cl.members.back().push_back(p);
  }
  return cl;
}

double f_lambda(const EnvSpec& nu, double lambda, const Clusters& cl) {
  double f = 0.0;
  for (int j = 0; j < cl.count(); ++j) {
    int n = cl.size[size_t(j)];
    if (n > kMomentMax)
      throw std::invalid_argument("f_lambda: cluster size exceeds the moment table");
    double mgf = 0.0;
    for (int b = 0; b <= n; ++b)
      mgf += binom(n, b) * nu.moment(b, n - b) * std::exp(lambda * double(2 * b - n));
    f += std::log(mgf);
  }
  return f;
}

double f_lambda(const EnvSpec& nu, double lambda, const std::vector<int64_t>& pos) {
  return f_lambda(nu, lambda, clusters_of(pos));
}

int64_t KPointState::v_at(int i, int j) const {
  if (i > j) std::swap(i, j);
  int k = this->k();
  return vij[size_t(i * (2 * k - i - 1) / 2 + (j - i - 1))];
}

int KPointState::distinct() const { return clusters_of(pos).count(); }

int64_t KPointState::gamma_le_km2() const {
  int64_t s = 0;
  for (int v = 1; v <= k() - 2; ++v) s += gamma_count[size_t(v)];
  return s;
}

double tanaka(const KPointState& st, const EnvSpec& nu, int i, int j) {
  double coef = 4.0 * (nu.mu * (1.0 - nu.mu) - nu.sigma2);
  return coef * double(st.v_at(i, j)) -
         double(std::llabs(st.pos[size_t(i)] - st.pos[size_t(j)]));
}

Rescaled rescale(const KPointState& st, double N, double mu) {
  Rescaled out;
  double n12 = std::sqrt(N);
  double drift = (2.0 * mu - 1.0) * double(st.r);
  for (int64_t p : st.pos) out.X.push_back((double(p) - drift) / n12);
  for (int64_t v : st.vij) out.V.push_back(double(v) / n12);
  out.T = double(st.gamma_le_km2()) / n12;
  return out;
}

double ExpMartingale::log_value(const KPointState& st) const {
  double s = 0.0;
  for (int64_t p : st.pos) s += double(p);
  return lambda_ * s - sum_f_;
}

GirsanovLedger::GirsanovLedger(EnvSpec nu, EnvSpec nu_star, double N)
    : nu_(std::move(nu)), nu_star_(std::move(nu_star)) {
  n14_ = std::pow(N, 0.25);
  drift_ = 2.0 * nu_star_.mu - 1.0;
}

GirsanovLedger::Increment GirsanovLedger::increment_general(
    const Clusters& cl, const std::vector<int>& b) const {
  const int v = cl.count();
  double sum_dR = 0.0;
  int kk = 0;
  double dD = 0.0, dD_mean = 0.0;
  for (int j = 0; j < v; ++j) {
    int n = cl.size[size_t(j)];
    kk += n;
    sum_dR += double(2 * b[size_t(j)] - n);
    dD += std::log(nu_.moment(b[size_t(j)], n - b[size_t(j)]) /
                   nu_star_.moment(b[size_t(j)], n - b[size_t(j)]));
    for (int bb = 0; bb <= n; ++bb) {
      double p = binom(n, bb) * nu_star_.moment(bb, n - bb);
      dD_mean += p * std::log(nu_.moment(bb, n - bb) / nu_star_.moment(bb, n - bb));
    }
  }
  Increment inc;
  inc.dH = (sum_dR - double(kk) * drift_) / n14_;
  inc.dD_centered = dD - dD_mean;
  inc.dG = inc.dH + inc.dD_centered;

  // dW = log E*[e^{dG} | F]: enumerate per-cluster up-count combinations.
  // dG(pattern) = (sum_j (2b_j - n_j) - k drift)/N^{1/4} + sum_j log m(b_j) - dD_mean.
  double base = -double(kk) * drift_ / n14_ - dD_mean;
  std::vector<double> vals{base}, probs{1.0};
  for (int j = 0; j < v; ++j) {
    int n = cl.size[size_t(j)];
    std::vector<double> nvals, nprobs;
    nvals.reserve(vals.size() * size_t(n + 1));
    nprobs.reserve(vals.size() * size_t(n + 1));
    for (size_t q = 0; q < vals.size(); ++q) {
      for (int bb = 0; bb <= n; ++bb) {
        double p = binom(n, bb) * nu_star_.moment(bb, n - bb);
        double contrib = double(2 * bb - n) / n14_ +
                         std::log(nu_.moment(bb, n - bb) / nu_star_.moment(bb, n - bb));
        nvals.push_back(vals[q] + contrib);
        nprobs.push_back(probs[q] * p);
      }
    }
    vals.swap(nvals);
    probs.swap(nprobs);
  }
  double e = 0.0;
  for (size_t q = 0; q < vals.size(); ++q) e += probs[q] * std::exp(vals[q]);
  inc.dW = std::log(e);
  return inc;
}

void GirsanovLedger::update(const Clusters& cl, const std::vector<int>& b) {
  int kk = 0;
  for (int s : cl.size) kk += s;
  if (cl.count() == kk) {
    // all particles distinct: dG = dW = 0 by the rho_N cancellation
    last_dG_ = 0.0;
    return;
  }
  Increment inc = increment_general(cl, b);
  Ht_ += inc.dH;
  Dt_ += inc.dD_centered;
  W_ += inc.dW;
  last_dG_ = inc.dG;
  c_obs_ = std::max(c_obs_, inc.dG * inc.dG * n14_ * n14_);
}

double log_exp_martingale_along_path(const EnvSpec& nu, double lambda,
                                     const std::vector<std::vector<int64_t>>& path) {
  double sum_f = 0.0, sum_pos = 0.0;
  for (size_t s = 0; s + 1 < path.size(); ++s) sum_f += f_lambda(nu, lambda, path[s]);
  for (int64_t p : path.back()) sum_pos += double(p);
  return lambda * sum_pos - sum_f;
}

GirsanovLedger ledger_along_path(const EnvSpec& nu, const EnvSpec& nu_star, double N,
                                 const std::vector<std::vector<int64_t>>& path) {
  GirsanovLedger led(nu, nu_star, N);
  for (size_t s = 0; s + 1 < path.size(); ++s) {
    Clusters cl = clusters_of(path[s]);
    std::vector<int> b(size_t(cl.count()), 0);
    for (int j = 0; j < cl.count(); ++j)
      for (int q : cl.members[size_t(j)])
        if (path[s + 1][size_t(q)] > path[s][size_t(q)]) ++b[size_t(j)];
    led.update(cl, b);
  }
  return led;
}

KPointWalk KPointWalk::annealed(int k, EnvSpec spec, uint64_t stream_key) {
  KPointWalk w(k, stream_key);
  w.annealed_spec_ = std::move(spec);
  return w;
}

KPointWalk KPointWalk::quenched(int k, Environment env, uint64_t stream_key) {
  KPointWalk w(k, stream_key);
  w.env_ = std::move(env);
  return w;
}

KPointWalk::StepRecord KPointWalk::step() {
  StepRecord rec;
  rec.clusters = clusters_of(st_.pos);
  const int v = rec.clusters.count();
  rec.b.assign(size_t(v), 0);
  st_.gamma_count[size_t(v)] += 1;

  // pairwise coincidence counters accumulate before the move
  const int k = st_.k();
  size_t idx = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j, ++idx)
      if (st_.pos[size_t(i)] == st_.pos[size_t(j)]) st_.vij[idx] += 1;

  const uint64_t r = uint64_t(st_.r);
  for (int j = 0; j < v; ++j) {
    double omega;
    if (env_) {
      omega = env_->weight(st_.r, rec.clusters.site[size_t(j)]);
    } else {
      double u = philox_u01(key_, r, (uint64_t(j) << 8) | CTR_KPOINT_OMEGA);
      omega = annealed_spec_->sample(u);
    }
    for (int p : rec.clusters.members[size_t(j)]) {
      double u = philox_u01(key_, r, (uint64_t(p) << 8) | CTR_KPOINT_MOVE);
      if (u < omega) {
        st_.pos[size_t(p)] += 1;
        rec.b[size_t(j)] += 1;
      } else {
        st_.pos[size_t(p)] -= 1;
      }
    }
  }
  st_.r += 1;
  return rec;
}

}  // namespace rwlab
