#include "xpair/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xpair/errors.hpp"

namespace xpair {

SpinConfig random_spin_config(int n, RngStream& rng) {
  SpinConfig sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = rng.next_spin();
  return sigma;
}

SpinConfig gibbs_step(const QuadraticModel& model, const SpinConfig& sigma,
                      RngStream& rng) {
  const int n = model.size();
  const int site = static_cast<int>(rng.next_below(n));
  const double p_plus =
      conditional_plus_probability(model.beta, local_field(model, sigma, site));
  SpinConfig next = sigma;
  next[site] = rng.next_bernoulli(p_plus) ? 1.0 : -1.0;
  return next;
}

long default_burn_in(int n) {
  return static_cast<long>(std::ceil(20.0 * n * std::log(n + 1.0)));
}

SpinConfig sample_gibbs(const QuadraticModel& model, long burn_in, RngStream& rng) {
  if (burn_in < 0) throw config_error("sample_gibbs: negative burn_in");
  GibbsChain chain(model, random_spin_config(model.size(), rng));
  chain.run(burn_in, rng);
  return chain.state();
}

GibbsChain::GibbsChain(const QuadraticModel& model, SpinConfig initial)
    : model_(&model), sigma_(std::move(initial)) {
  if (sigma_.size() != model.field.size())
    throw config_error("GibbsChain: dimension mismatch");
  fields_ = local_fields(model, sigma_);
}

void GibbsChain::step(RngStream& rng) {
  const int n = model_->size();
  const int site = static_cast<int>(rng.next_below(n));
  const double p_plus = conditional_plus_probability(model_->beta, fields_[site]);
  const double next = rng.next_bernoulli(p_plus) ? 1.0 : -1.0;
  if (next != sigma_[site]) {
    fields_ += model_->coupling.col(site) * (next - sigma_[site]);
    sigma_[site] = next;
    if (++flips_since_refresh_ >= 4096) {
      fields_ = local_fields(*model_, sigma_);
      flips_since_refresh_ = 0;
    }
  }
}

void GibbsChain::run(long steps, RngStream& rng) {
  for (long s = 0; s < steps; ++s) step(rng);
}

Permutation identity_permutation(int n) {
  Permutation pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  return pi;
}

Permutation random_permutation(int n, RngStream& rng) {
  Permutation pi = identity_permutation(n);
  for (int i = n - 1; i > 0; --i)
    std::swap(pi[i], pi[static_cast<int>(rng.next_below(i + 1))]);
  return pi;
}

Permutation transposition_walk_step(const Permutation& pi, RngStream& rng) {
  const int n = static_cast<int>(pi.size());
  if (n == 0) throw config_error("transposition_walk_step: empty permutation");
  if (rng.next_below(n) == 0) return pi;  // identity step, probability 1/n
  // uniform transposition of two distinct values a < b
  const int a = static_cast<int>(rng.next_below(n));
  int b = static_cast<int>(rng.next_below(n - 1));
  if (b >= a) ++b;
  // left-compose: swap the values a and b wherever they occur
  Permutation next = pi;
  for (int i = 0; i < n; ++i) {
    if (next[i] == a)
      next[i] = b;
    else if (next[i] == b)
      next[i] = a;
  }
  return next;
}

std::pair<Permutation, Permutation> random_transposition_pair(const Permutation& pi,
                                                              RngStream& rng) {
  const int n = static_cast<int>(pi.size());
  if (n == 0) throw config_error("random_transposition_pair: empty permutation");
  const int i = static_cast<int>(rng.next_below(n));
  const int j = static_cast<int>(rng.next_below(n));
  Permutation next = pi;
  std::swap(next[i], next[j]);  // pi o (i,j)
  return {pi, next};
}

bool is_proper(const GraphAdj& g, const Coloring& x) {
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u])
      if (x[u] == x[v]) return false;
  return true;
}

std::vector<int> allowed_colors(const GraphAdj& g, int k, const Coloring& x, int vertex) {
  std::vector<bool> used(k + 1, false);
  for (int v : g.adj[vertex]) {
    if (x[v] >= 1 && x[v] <= k) used[x[v]] = true;
  }
  std::vector<int> out;
  for (int c = 1; c <= k; ++c)
    if (!used[c]) out.push_back(c);
  return out;
}

Coloring greedy_coloring(const GraphAdj& g, int k) {
  if (k <= g.max_degree)
    throw config_error("greedy_coloring: need k >= max_degree + 1");
  Coloring x = Coloring::Zero(g.n);
  for (int v = 0; v < g.n; ++v) {
    std::vector<bool> used(k + 1, false);
    for (int u : g.adj[v])
      if (u < v) used[x[u]] = true;
    for (int c = 1; c <= k; ++c)
      if (!used[c]) {
        x[v] = c;
        break;
      }
  }
  return x;
}

Coloring glauber_coloring_step(const GraphAdj& g, int k, const Coloring& x,
                               RngStream& rng) {
  if (k <= g.max_degree)
    throw config_error("glauber_coloring_step: need k > max_degree");
  const int vertex = static_cast<int>(rng.next_below(g.n));
  const std::vector<int> ok = allowed_colors(g, k, x, vertex);
  Coloring next = x;
  next[vertex] = ok[rng.next_below(ok.size())];
  return next;
}

Coloring sample_proper_coloring(const GraphAdj& g, int k, long steps, RngStream& rng) {
  Coloring x = greedy_coloring(g, k);
  for (long s = 0; s < steps; ++s) x = glauber_coloring_step(g, k, x, rng);
  return x;
}

Eigen::MatrixXd sk_couplings(int n, RngStream& rng) {
  if (n < 2) throw config_error("sk_couplings: need n >= 2");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) J(i, j) = J(j, i) = scale * rng.next_gaussian();
  return J;
}

}  // namespace xpair
