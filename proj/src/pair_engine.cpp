#include "xpair/pair_engine.hpp"

#include <algorithm>
#include <cmath>

namespace xpair {

TransitionFn gibbs_transition_fn(const QuadraticModel& model) {
  return [&model](std::uint64_t s) { return gibbs_transitions(model, s); };
}

std::vector<VFunctionals> v_exact(const ExactGibbs& gibbs, const TransitionFn& kernel,
                                  const std::vector<double>& f, const PairValueFn& F) {
  if (f.size() != gibbs.size()) throw config_error("v_exact: f table size mismatch");
  std::vector<VFunctionals> out(gibbs.size());
  for (std::uint64_t s = 0; s < gibbs.size(); ++s) {
    VFunctionals acc;
    for (const SpinTransition& tr : kernel(s)) {
      if (tr.prob == 0.0) continue;
      const double df = f[s] - f[tr.to];
      if (df == 0.0) continue;
      const double Fxy = F(s, tr.to);
      acc.v += tr.prob * 0.5 * std::abs(df * Fxy);
      acc.v1 += tr.prob * 0.5 * df * Fxy;
      acc.v2 += tr.prob * 0.25 * df * df * std::abs(Fxy);
    }
    out[s] = acc;
  }
  return out;
}

VarianceIdentity variance_identity_check(const ExactGibbs& gibbs,
                                         const TransitionFn& kernel,
                                         const std::vector<double>& f,
                                         const PairValueFn& F, double premise_tol) {
  if (f.size() != gibbs.size())
    throw config_error("variance_identity_check: f table size mismatch");
  VarianceIdentity out{};
  double mean_f = 0.0, mean_f2 = 0.0, rhs = 0.0, premise = 0.0;
  for (std::uint64_t s = 0; s < gibbs.size(); ++s) {
    const double p = gibbs.probs[s];
    mean_f += p * f[s];
    mean_f2 += p * f[s] * f[s];
    double cond_F = 0.0, pair = 0.0;
    for (const SpinTransition& tr : kernel(s)) {
      if (tr.prob == 0.0) continue;
      const double Fxy = tr.to == s ? 0.0 : F(s, tr.to);
      cond_F += tr.prob * Fxy;
      pair += tr.prob * (f[s] - f[tr.to]) * Fxy;
    }
    premise = std::max(premise, std::abs(cond_F - f[s]));
    rhs += p * 0.5 * pair;
  }
  out.premise_error = premise;
  if (premise > premise_tol)
    throw numerical_error("variance_identity_check: E(F|X) != f beyond tolerance");
  out.variance = mean_f2 - mean_f * mean_f;
  out.half_pair_expectation = rhs;
  out.gap = std::abs(out.variance - out.half_pair_expectation);
  return out;
}

std::vector<double> exact_poisson_series(const ExactGibbs& gibbs,
                                         const TransitionFn& kernel,
                                         const std::vector<double>& f,
                                         long max_terms, double tol) {
  const std::uint64_t count = gibbs.size();
  std::vector<double> partial(f), iterate(f), next(count);
  for (long k = 1; k <= max_terms; ++k) {
    for (std::uint64_t s = 0; s < count; ++s) {
      double acc = 0.0;
      for (const SpinTransition& tr : kernel(s)) acc += tr.prob * iterate[tr.to];
      next[s] = acc;
    }
    iterate.swap(next);
    for (std::uint64_t s = 0; s < count; ++s) partial[s] += iterate[s];
    const auto [lo, hi] = std::minmax_element(iterate.begin(), iterate.end());
    if (*hi - *lo < tol) return partial;  // differences of partial sums have settled
  }
  throw numerical_error("exact_poisson_series: no convergence within max_terms");
}

std::pair<double, double> maximal_coupling_draw(const DiscreteDistribution& p,
                                                const DiscreteDistribution& q,
                                                RngStream& rng) {
  if (p.support.size() == q.support.size() &&
      (p.support.array() == q.support.array()).all()) {
    const Eigen::VectorXd shared = p.weights.cwiseMin(q.weights);
    const double overlap = shared.sum();
    if (overlap >= 1.0 - 1e-14 || rng.next_double() < overlap) {
      const DiscreteDistribution common(p.support, shared / overlap);
      const double w = sample_atom(common, rng);
      return {w, w};
    }
    const DiscreteDistribution rp(p.support, (p.weights - shared) / (1.0 - overlap));
    const DiscreteDistribution rq(q.support, (q.weights - shared) / (1.0 - overlap));
    return {sample_atom(rp, rng), sample_atom(rq, rng)};
  }
  // distinct supports: merge by matching atom values
  std::vector<double> atoms;
  for (Eigen::Index i = 0; i < p.support.size(); ++i) atoms.push_back(p.support[i]);
  for (Eigen::Index i = 0; i < q.support.size(); ++i) atoms.push_back(q.support[i]);
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  const Eigen::Index m = static_cast<Eigen::Index>(atoms.size());
  Eigen::VectorXd support(m), wp = Eigen::VectorXd::Zero(m), wq = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) support[i] = atoms[i];
  auto index_of = [&](double a) {
    return std::lower_bound(atoms.begin(), atoms.end(), a) - atoms.begin();
  };
  for (Eigen::Index i = 0; i < p.support.size(); ++i)
    wp[index_of(p.support[i])] += p.weights[i];
  for (Eigen::Index i = 0; i < q.support.size(); ++i)
    wq[index_of(q.support[i])] += q.weights[i];
  return maximal_coupling_draw(DiscreteDistribution(support, wp),
                               DiscreteDistribution(support, wq), rng);
}

std::pair<SpinConfig, SpinConfig> greedy_coupled_step(const QuadraticModel& model,
                                                      const SpinConfig& x,
                                                      const SpinConfig& y,
                                                      RngStream& rng) {
  const int n = model.size();
  const int site = static_cast<int>(rng.next_below(n));
  const auto [wx, wy] = maximal_coupling_draw(conditional_spin_distribution(model, x, site),
                                              conditional_spin_distribution(model, y, site), rng);
  SpinConfig nx = x, ny = y;
  nx[site] = wx;
  ny[site] = wy;
  return {nx, ny};
}

std::pair<Coloring, Coloring> greedy_coupled_step(const GraphAdj& g, int k,
                                                  const Coloring& x, const Coloring& y,
                                                  RngStream& rng) {
  const int vertex = static_cast<int>(rng.next_below(g.n));
  auto uniform_on = [](const std::vector<int>& cs) {
    Eigen::VectorXd s(cs.size()), w(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) s[static_cast<Eigen::Index>(i)] = cs[i];
    w.setConstant(1.0 / static_cast<double>(cs.size()));
    return DiscreteDistribution(s, w);
  };
  const auto [wx, wy] =
      maximal_coupling_draw(uniform_on(allowed_colors(g, k, x, vertex)),
                            uniform_on(allowed_colors(g, k, y, vertex)), rng);
  Coloring nx = x, ny = y;
  nx[vertex] = static_cast<int>(wx);
  ny[vertex] = static_cast<int>(wy);
  return {nx, ny};
}

CoupledKernel<SpinConfig> greedy_coupled_kernel(const QuadraticModel& model) {
  return {[&model](const SpinConfig& x, const SpinConfig& y, RngStream& rng) {
            return greedy_coupled_step(model, x, y, rng);
          },
          "greedy-coupled-gibbs"};
}

CoupledKernel<Coloring> greedy_coupled_kernel(const GraphAdj& g, int k) {
  return {[&g, k](const Coloring& x, const Coloring& y, RngStream& rng) {
            return greedy_coupled_step(g, k, x, y, rng);
          },
          "greedy-coupled-glauber"};
}

PairKernel<SpinConfig> gibbs_pair_kernel(const QuadraticModel& model) {
  return {[&model](const SpinConfig& x, RngStream& rng) { return gibbs_step(model, x, rng); },
          "single-site-gibbs"};
}

long default_coupling_horizon(int n) {
  return static_cast<long>(std::ceil(50.0 * n * std::log(n + 1.0)));
}

}  // namespace xpair
