#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xpair/discrete.hpp"
#include "xpair/errors.hpp"
#include "xpair/graph.hpp"
#include "xpair/rng.hpp"
#include "xpair/samplers.hpp"
#include "xpair/spin_model.hpp"

namespace xpair {

// One-step randomizer x -> x' realizing an exchangeable pair (X, X')
// when X is stationary for the step.
template <class State>
struct PairKernel {
  std::function<State(const State&, RngStream&)> step;
  std::string label;
};

// Joint step (x, y) -> (x', y') whose marginals follow the same
// PairKernel and depend only on their own current state.
template <class State>
struct CoupledKernel {
  std::function<std::pair<State, State>(const State&, const State&, RngStream&)> step;
  std::string label;
};

// v  = (1/2) E( |(f(X)-f(X')) F(X,X')|     | X = x )
// v1 = (1/2) E(  (f(X)-f(X')) F(X,X')      | X = x )
// v2 = (1/4) E(  (f(X)-f(X'))^2 |F(X,X')|  | X = x )
struct VFunctionals {
  double v = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
};

using TransitionFn = std::function<std::vector<SpinTransition>(std::uint64_t)>;
using PairValueFn = std::function<double(std::uint64_t, std::uint64_t)>;

TransitionFn gibbs_transition_fn(const QuadraticModel& model);

// Exact conditional expectations at every state of an enumerated space;
// f is tabulated in state-index order.
std::vector<VFunctionals> v_exact(const ExactGibbs& gibbs, const TransitionFn& kernel,
                                  const std::vector<double>& f, const PairValueFn& F);

struct VarianceIdentity {
  double variance;               // Var f under the exact measure
  double half_pair_expectation;  // (1/2) E((f - f') F)
  double gap;
  double premise_error;  // max_x |E(F(X,X')|X=x) - f(x)|
};

// Checks E(F(X,X')|X) = f first (throws numerical_error beyond
// premise_tol), then evaluates both sides of the variance identity.
VarianceIdentity variance_identity_check(const ExactGibbs& gibbs,
                                         const TransitionFn& kernel,
                                         const std::vector<double>& f,
                                         const PairValueFn& F,
                                         double premise_tol = 1e-8);

// Exact F(x,y) = sum_k (P^k f(x) - P^k f(y)) for an enumerated kernel,
// truncated when the sup of |P^k f| differences stops moving the sums.
std::vector<double> exact_poisson_series(const ExactGibbs& gibbs,
                                         const TransitionFn& kernel,
                                         const std::vector<double>& f,
                                         long max_terms, double tol);

struct VEstimate {
  VFunctionals mean;
  VFunctionals std_error;
  long samples = 0;
};

template <class State, class F1, class F2>
VEstimate v_estimate(const State& x, const PairKernel<State>& kernel, F1&& f, F2&& F,
                     long samples, RngStream& rng) {
  if (samples < 1) throw config_error("v_estimate: need samples >= 1");
  const double fx = f(x);
  Eigen::Vector3d sum = Eigen::Vector3d::Zero(), sumsq = Eigen::Vector3d::Zero();
  for (long s = 0; s < samples; ++s) {
    const State y = kernel.step(x, rng);
    const double df = fx - f(y);
    const double Fxy = F(x, y);
    const Eigen::Vector3d draw(0.5 * std::abs(df * Fxy), 0.5 * df * Fxy,
                               0.25 * df * df * std::abs(Fxy));
    sum += draw;
    sumsq += draw.cwiseProduct(draw);
  }
  VEstimate out;
  out.samples = samples;
  const Eigen::Vector3d mean = sum / samples;
  out.mean = {mean[0], mean[1], mean[2]};
  if (samples > 1) {
    const Eigen::Vector3d var =
        (sumsq - samples * mean.cwiseProduct(mean)).cwiseMax(0.0) / (samples - 1.0);
    const Eigen::Vector3d se = (var / samples).cwiseSqrt();
    out.std_error = {se[0], se[1], se[2]};
  }
  return out;
}

// Draw (W1, W2) with W1 ~ p, W2 ~ q and P(W1 != W2) = d_TV(p, q):
// sample the shared part min(p,q) with probability 1 - d_TV, otherwise
// the two residuals independently (their supports are disjoint).
std::pair<double, double> maximal_coupling_draw(const DiscreteDistribution& p,
                                                const DiscreteDistribution& q,
                                                RngStream& rng);

// Same uniform site in both chains, site value drawn from the maximal
// coupling of the two conditional laws.
std::pair<SpinConfig, SpinConfig> greedy_coupled_step(const QuadraticModel& model,
                                                      const SpinConfig& x,
                                                      const SpinConfig& y,
                                                      RngStream& rng);
std::pair<Coloring, Coloring> greedy_coupled_step(const GraphAdj& g, int k,
                                                  const Coloring& x, const Coloring& y,
                                                  RngStream& rng);

CoupledKernel<SpinConfig> greedy_coupled_kernel(const QuadraticModel& model);
CoupledKernel<Coloring> greedy_coupled_kernel(const GraphAdj& g, int k);
PairKernel<SpinConfig> gibbs_pair_kernel(const QuadraticModel& model);

inline bool states_equal(const SpinConfig& a, const SpinConfig& b) {
  return (a.array() == b.array()).all();
}
inline bool states_equal(const Coloring& a, const Coloring& b) {
  return (a.array() == b.array()).all();
}

// First step index at which the coupled chains meet, or nullopt if the
// cap is exceeded.
template <class State>
std::optional<long> coupling_time(State x, State y, const CoupledKernel<State>& coupled,
                                  long cap, RngStream& rng) {
  if (cap < 1) throw config_error("coupling_time: cap must be >= 1");
  for (long k = 0; k <= cap; ++k) {
    if (states_equal(x, y)) return k;
    std::tie(x, y) = coupled.step(x, y, rng);
  }
  return std::nullopt;
}

struct FEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double truncation_tail = 0.0;  // geometric tail from the observed contraction
  bool converged = false;
  long steps = 0;
};

long default_coupling_horizon(int n);  // 50 n log(n+1)

// Monte Carlo partial sums of F(x,y) = sum_k E(f(X_k) - f(X'_k)); the
// series is declared converged once window consecutive mean increments
// fall below tol (coalesced replicates contribute exact zeros).
template <class State, class F1>
FEstimate F_from_coupling(const State& x, const State& y, F1&& f,
                          const CoupledKernel<State>& coupled, long horizon, double tol,
                          long replicates, RngStream& rng, int window = 0) {
  if (horizon < 1) throw config_error("F_from_coupling: horizon must be >= 1");
  if (replicates < 1) throw config_error("F_from_coupling: need replicates >= 1");
  if (window <= 0) window = static_cast<int>(x.size());

  std::vector<State> xs(replicates, x), ys(replicates, y);
  std::vector<RngStream> streams;
  streams.reserve(replicates);
  for (long r = 0; r < replicates; ++r) streams.push_back(rng.substream(r));
  std::vector<double> totals(replicates, 0.0);

  FEstimate out;
  int quiet = 0;
  long alive = replicates;
  double last_increment = 0.0, prev_increment = 0.0;
  for (long k = 0; k <= horizon; ++k) {
    double inc = 0.0;
    for (long r = 0; r < replicates; ++r) {
      if (states_equal(xs[r], ys[r])) continue;
      const double d = f(xs[r]) - f(ys[r]);
      totals[r] += d;
      inc += d;
    }
    inc /= replicates;
    out.steps = k;
    prev_increment = last_increment;
    last_increment = std::abs(inc);
    quiet = last_increment < tol ? quiet + 1 : 0;
    if (quiet >= window) {
      out.converged = true;
      break;
    }
    alive = 0;
    for (long r = 0; r < replicates; ++r) {
      if (states_equal(xs[r], ys[r])) continue;
      std::tie(xs[r], ys[r]) = coupled.step(xs[r], ys[r], streams[r]);
      ++alive;
    }
    if (alive == 0) {  // every replicate coalesced; all later terms are zero
      out.converged = true;
      break;
    }
  }

  double mean = 0.0;
  for (double t : totals) mean += t;
  mean /= replicates;
  out.value = mean;
  if (replicates > 1) {
    double ss = 0.0;
    for (double t : totals) ss += (t - mean) * (t - mean);
    out.std_error = std::sqrt(ss / (replicates - 1.0) / replicates);
  }
  if (!out.converged)
    throw numerical_error("F_from_coupling: series did not stabilize within horizon");
  if (alive > 0 && last_increment > 0.0 && prev_increment > last_increment) {
    const double rate = last_increment / prev_increment;
    out.truncation_tail = last_increment * rate / (1.0 - rate);
  }
  return out;
}

}  // namespace xpair
