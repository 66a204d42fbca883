#include "xpair/dobrushin.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "xpair/discrete.hpp"
#include "xpair/errors.hpp"
#include "xpair/samplers.hpp"

namespace xpair {

InterdependenceMatrix quadratic_interdependence(const QuadraticModel& model) {
  Eigen::MatrixXd a = 4.0 * model.beta * model.coupling.cwiseAbs();
  a.diagonal().setZero();
  return {std::move(a), "quadratic-hessian"};
}

InterdependenceMatrix coloring_interdependence(const GraphAdj& g, int k) {
  if (k <= g.max_degree)
    throw config_error("coloring_interdependence: need k > max degree");
  Eigen::MatrixXd a = adjacency_matrix(g) / static_cast<double>(k - g.max_degree);
  return {std::move(a), "proper-coloring"};
}

namespace {

struct CheckAccumulator {
  InterdependenceReport report;
  bool first = true;

  void add(double tv, double entry, std::uint64_t state, int changed, int site) {
    ++report.checks;
    const double slack = entry - tv;
    const double ratio = entry > 0.0 ? tv / entry : (tv > 0.0 ? HUGE_VAL : 0.0);
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (first || slack < report.worst_slack) {
      first = false;
      report.worst_slack = slack;
      report.witness_state = state;
      report.witness_changed_site = changed;
      report.witness_site = site;
      report.witness_tv = tv;
      report.witness_entry = entry;
    }
    if (tv > entry + 1e-12) report.passed = false;
  }
};

// d_TV of the two conditional spin laws at `site` when coordinate
// `changed` of sigma is flipped: |tanh(b m) - tanh(b m')| / 2.
double spin_conditional_tv(const QuadraticModel& model, const SpinConfig& sigma,
                           int changed, int site) {
  const double m = local_field(model, sigma, site);
  const double m_other = m - 2.0 * model.coupling(site, changed) * sigma[changed];
  return 0.5 * std::abs(std::tanh(model.beta * m) - std::tanh(model.beta * m_other));
}

void check_state(const QuadraticModel& model, const InterdependenceMatrix& A,
                 const SpinConfig& sigma, std::uint64_t state, CheckAccumulator& acc) {
  const int n = model.size();
  for (int changed = 0; changed < n; ++changed)
    for (int site = 0; site < n; ++site) {
      if (site == changed) continue;
      acc.add(spin_conditional_tv(model, sigma, changed, site), A.a(site, changed),
              state, changed, site);
    }
}

}  // namespace

InterdependenceReport verify_interdependence(const QuadraticModel& model,
                                             const InterdependenceMatrix& A) {
  const int n = model.size();
  if (n > 20) throw config_error("verify_interdependence: state space too large");
  CheckAccumulator acc;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < count; ++s)
    check_state(model, A, decode_state(s, n), s, acc);
  return acc.report;
}

InterdependenceReport verify_interdependence(const QuadraticModel& model,
                                             const InterdependenceMatrix& A,
                                             long sample_budget, RngStream& rng) {
  if (sample_budget < 1) throw config_error("verify_interdependence: empty budget");
  CheckAccumulator acc;
  for (long b = 0; b < sample_budget; ++b) {
    const SpinConfig sigma = random_spin_config(model.size(), rng);
    check_state(model, A, sigma, encode_state(sigma), acc);
  }
  return acc.report;
}

InterdependenceReport verify_interdependence_coloring(const GraphAdj& g, int k,
                                                      const InterdependenceMatrix& A) {
  if (k <= g.max_degree)
    throw config_error("verify_interdependence_coloring: need k > max degree");
  const int n = g.n;
  if (n * std::log(double(k)) > 18.0 * std::log(2.0))
    throw config_error("verify_interdependence_coloring: state space too large");

  auto uniform_on = [](const std::vector<int>& cs) {
    Eigen::VectorXd s(cs.size()), w(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) s[static_cast<Eigen::Index>(i)] = cs[i];
    w.setConstant(1.0 / static_cast<double>(cs.size()));
    return DiscreteDistribution(s, w);
  };

  CheckAccumulator acc;
  Coloring x = Coloring::Constant(n, 1);
  std::uint64_t index = 0;
  while (true) {
    for (int changed = 0; changed < n; ++changed) {
      const int old_color = x[changed];
      for (int other = 1; other <= k; ++other) {
        if (other == old_color) continue;
        Coloring y = x;
        y[changed] = other;
        for (int site = 0; site < n; ++site) {
          if (site == changed) continue;
          const double tv = tv_distance(uniform_on(allowed_colors(g, k, x, site)),
                                        uniform_on(allowed_colors(g, k, y, site)));
          acc.add(tv, A.a(site, changed), index, changed, site);
        }
      }
    }
    // odometer over {1..k}^n
    int pos = 0;
    while (pos < n && x[pos] == k) x[pos++] = 1;
    if (pos == n) break;
    ++x[pos];
    ++index;
  }
  return acc.report;
}

}  // namespace xpair
