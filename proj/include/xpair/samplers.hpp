#pragma once

#include <Eigen/Core>
#include <vector>

#include "xpair/graph.hpp"
#include "xpair/rng.hpp"
#include "xpair/spin_model.hpp"

namespace xpair {

// ---- spin models -------------------------------------------------------

SpinConfig random_spin_config(int n, RngStream& rng);

// Heat-bath update: uniform site, spin redrawn from its conditional law.
// (sigma, gibbs_step(sigma)) is an exchangeable pair at stationarity.
SpinConfig gibbs_step(const QuadraticModel& model, const SpinConfig& sigma,
                      RngStream& rng);

long default_burn_in(int n);  // 20 n log(n+1)

SpinConfig sample_gibbs(const QuadraticModel& model, long burn_in, RngStream& rng);

// Chain with incrementally maintained local fields; O(n) per accepted
// flip instead of O(n) per proposal for dense couplings.  The fields are
// recomputed from scratch periodically to keep drift bounded.
class GibbsChain {
 public:
  GibbsChain(const QuadraticModel& model, SpinConfig initial);
  void step(RngStream& rng);
  void run(long steps, RngStream& rng);
  const SpinConfig& state() const { return sigma_; }
  const Eigen::VectorXd& fields() const { return fields_; }
  const QuadraticModel& model() const { return *model_; }

 private:
  const QuadraticModel* model_;
  SpinConfig sigma_;
  Eigen::VectorXd fields_;
  long flips_since_refresh_ = 0;
};

// ---- permutations ------------------------------------------------------

using Permutation = std::vector<int>;  // one-line notation, values 0..n-1

Permutation identity_permutation(int n);
Permutation random_permutation(int n, RngStream& rng);

// Step of the random-transposition walk: identity with probability 1/n,
// otherwise left-composition with a uniform transposition.
Permutation transposition_walk_step(const Permutation& pi, RngStream& rng);

// (pi, pi o (I,J)) with I, J independent uniform (I = J allowed).
std::pair<Permutation, Permutation> random_transposition_pair(const Permutation& pi,
                                                              RngStream& rng);

// ---- proper colorings ---------------------------------------------------

using Coloring = Eigen::VectorXi;  // values in 1..k

bool is_proper(const GraphAdj& g, const Coloring& x);

// Index-order greedy coloring with the lowest admissible color; needs
// k >= max_degree + 1.
Coloring greedy_coloring(const GraphAdj& g, int k);

// Glauber update: uniform vertex recolored uniformly among colors not
// used by its neighbors.  Preserves properness; needs k > max_degree.
Coloring glauber_coloring_step(const GraphAdj& g, int k, const Coloring& x,
                               RngStream& rng);

Coloring sample_proper_coloring(const GraphAdj& g, int k, long steps, RngStream& rng);

std::vector<int> allowed_colors(const GraphAdj& g, int k, const Coloring& x, int vertex);

// ---- disorder ------------------------------------------------------------

// Symmetric couplings J_ij = g_ij / sqrt(n), g_ij iid standard gaussian,
// zero diagonal.
Eigen::MatrixXd sk_couplings(int n, RngStream& rng);

}  // namespace xpair
