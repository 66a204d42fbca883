#pragma once

#include <Eigen/Core>

#include "xpair/rng.hpp"

namespace xpair {

// Finite distribution over real atoms.  Weights must be nonnegative and
// sum to 1 within 1e-12.
struct DiscreteDistribution {
  Eigen::VectorXd support;
  Eigen::VectorXd weights;

  DiscreteDistribution(Eigen::VectorXd support_in, Eigen::VectorXd weights_in);

  double mean() const { return support.dot(weights); }
};

DiscreteDistribution two_point_distribution(double p_plus);  // atoms {-1,+1}

// (1/2) sum over the union support of |p - q|.  Atoms are matched by
// exact value; the intended use is small integer-valued supports.
double tv_distance(const DiscreteDistribution& p, const DiscreteDistribution& q);

double sample_atom(const DiscreteDistribution& d, RngStream& rng);

}  // namespace xpair
