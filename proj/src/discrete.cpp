#include "xpair/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "xpair/errors.hpp"

namespace xpair {

static constexpr double kNormTol = 1e-12;

DiscreteDistribution::DiscreteDistribution(Eigen::VectorXd support_in,
                                           Eigen::VectorXd weights_in)
    : support(std::move(support_in)), weights(std::move(weights_in)) {
  if (support.size() != weights.size() || support.size() == 0)
    throw config_error("DiscreteDistribution: support/weight size mismatch");
  if ((weights.array() < 0.0).any())
    throw config_error("DiscreteDistribution: negative weight");
  if (std::abs(weights.sum() - 1.0) > kNormTol)
    throw config_error("DiscreteDistribution: weights do not sum to 1");
}

DiscreteDistribution two_point_distribution(double p_plus) {
  Eigen::Vector2d s(-1.0, 1.0), w(1.0 - p_plus, p_plus);
  return DiscreteDistribution(s, w);
}

double tv_distance(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  std::vector<std::pair<double, double>> pa, qa;
  for (Eigen::Index i = 0; i < p.support.size(); ++i)
    pa.emplace_back(p.support[i], p.weights[i]);
  for (Eigen::Index i = 0; i < q.support.size(); ++i)
    qa.emplace_back(q.support[i], q.weights[i]);
  std::sort(pa.begin(), pa.end());
  std::sort(qa.begin(), qa.end());
  double total = 0.0;
  std::size_t i = 0, j = 0;
  while (i < pa.size() || j < qa.size()) {
    if (j == qa.size() || (i < pa.size() && pa[i].first < qa[j].first)) {
      total += pa[i++].second;
    } else if (i == pa.size() || qa[j].first < pa[i].first) {
      total += qa[j++].second;
    } else {
      total += std::abs(pa[i].second - qa[j].second);
      ++i;
      ++j;
    }
  }
  return 0.5 * total;
}

double sample_atom(const DiscreteDistribution& d, RngStream& rng) {
  const double u = rng.next_double();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < d.weights.size(); ++i) {
    acc += d.weights[i];
    if (u < acc) return d.support[i];
  }
  return d.support[d.support.size() - 1];
}

}  // namespace xpair
