#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "xpair/discrete.hpp"

namespace xpair {

// Spin configuration on {-1,+1}^n; entries are exactly -1.0 or +1.0.
using SpinConfig = Eigen::VectorXd;

bool is_spin_config(const SpinConfig& sigma);

// Quadratic-interaction model: energy
//   H(sigma) = - sum_{i<j} J_ij sigma_i sigma_j - sum_i h_i sigma_i,
// Gibbs weight exp(-beta * H).  J symmetric with zero diagonal.
struct QuadraticModel {
  Eigen::MatrixXd coupling;  // J
  Eigen::VectorXd field;     // h
  double beta = 0.0;

  QuadraticModel(Eigen::MatrixXd J, Eigen::VectorXd h, double beta_in);
  int size() const { return static_cast<int>(field.size()); }
};

QuadraticModel curie_weiss_model(int n, double beta, double h);

double hamiltonian(const QuadraticModel& model, const SpinConfig& sigma);

// m_i = sum_j J_ij sigma_j + h_i (the zero diagonal excludes site i).
double local_field(const QuadraticModel& model, const SpinConfig& sigma, int site);
Eigen::VectorXd local_fields(const QuadraticModel& model, const SpinConfig& sigma);

// P(sigma_i = +1 | rest) for local field m, i.e. 1/(1+exp(-2 beta m)).
double conditional_plus_probability(double beta, double m);

// Law of spin i given the rest; its mean equals tanh(beta * m_i).
DiscreteDistribution conditional_spin_distribution(const QuadraticModel& model,
                                                   const SpinConfig& sigma, int site);

double magnetization(const SpinConfig& sigma);

// Full enumeration of the Gibbs measure on {-1,+1}^n.  States are
// indexed by bitmask: bit i set means sigma_i = +1.
struct ExactGibbs {
  int n = 0;
  Eigen::VectorXd probs;     // indexed by state bitmask
  Eigen::VectorXd energies;  // H(state)

  std::uint64_t size() const { return static_cast<std::uint64_t>(probs.size()); }
  SpinConfig state(std::uint64_t index) const;
};

inline double spin_at(std::uint64_t state, int site) {
  return (state >> site) & 1u ? 1.0 : -1.0;
}
inline std::uint64_t flip_site(std::uint64_t state, int site) {
  return state ^ (std::uint64_t{1} << site);
}
SpinConfig decode_state(std::uint64_t state, int n);
std::uint64_t encode_state(const SpinConfig& sigma);

ExactGibbs enumerate_gibbs(const QuadraticModel& model, int cap = 20);

double exact_expectation(const ExactGibbs& gibbs,
                         const std::function<double(const SpinConfig&)>& g);

// Evaluate g at every state, in state-index order.
std::vector<double> tabulate(const ExactGibbs& gibbs,
                             const std::function<double(const SpinConfig&)>& g);

// One step of the single-site Gibbs sampler as an exact transition law:
// self-loop first, then one entry per flipped site.
struct SpinTransition {
  std::uint64_t to;
  double prob;
};
std::vector<SpinTransition> gibbs_transitions(const QuadraticModel& model,
                                              std::uint64_t state);

}  // namespace xpair
