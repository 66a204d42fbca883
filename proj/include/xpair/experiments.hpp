#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "xpair/bounds.hpp"
#include "xpair/dobrushin.hpp"
#include "xpair/estimation.hpp"
#include "xpair/graph.hpp"
#include "xpair/harness.hpp"
#include "xpair/samplers.hpp"
#include "xpair/spin_model.hpp"

namespace xpair {

// Sampling plan for chain-derived statistics: `chains` independent
// chains under one master seed (chain c uses stream id c), each burned
// in and then thinned.  Results are concatenated chain-major, so the
// output is independent of how chains are scheduled.
struct ChainOptions {
  long reps = 10000;
  long burn_in = -1;  // -1: 20 n log(n+1)
  long thin = -1;     // -1: one sweep (n steps)
  std::uint64_t seed = 1;
  int chains = 4;

  long resolved_burn_in(int n) const;
  long resolved_thin(int n) const;
};

using SpinStatistic = std::function<double(const SpinConfig&, const Eigen::VectorXd&)>;

std::vector<double> gibbs_statistic_samples(const QuadraticModel& model,
                                            const SpinStatistic& stat,
                                            const ChainOptions& opt);

std::vector<double> coloring_statistic_samples(const GraphAdj& g, int k,
                                               const std::function<double(const Coloring&)>& stat,
                                               const ChainOptions& opt);

// m - tanh(beta m + beta h)
double curie_weiss_residual(double beta, double h, const SpinConfig& sigma);
// m - (1/n) sum_i tanh(beta m_i)
double local_field_residual(double beta, const SpinConfig& sigma,
                            const Eigen::VectorXd& fields);
// (1/n) sum_i (tanh(beta m_i) - tanh(beta (J tanh(beta m) + h)_i))^2
double mean_squared_eps_tilde(const QuadraticModel& model, const Eigen::VectorXd& fields);

struct TailCheckResult {
  EmpiricalTail empirical;
  TailBound bound;
  VerificationReport report;
  double offset = 0.0;
};

// |m - tanh(beta m + beta h)| against the Curie-Weiss tail, offset beta/n.
TailCheckResult curie_weiss_tail_check(int n, double beta, double h,
                                       const ChainOptions& opt, int grid_points = 40,
                                       double level = 0.99);

// |Y| = |m - (1/n) sum tanh(beta m_i)| against the refined tail with
// constants from the computed operator norms of J and (J_ij^2).
TailCheckResult quadratic_residual_tail_check(const QuadraticModel& model,
                                              const ChainOptions& opt,
                                              int grid_points = 40, double level = 0.99);

// |magnetization| of the Ising model (unit couplings on g, density
// exp(-beta H)) against the weak-dependence tail with c_i = 2/n.
TailCheckResult ising_magnetization_tail_check(const GraphAdj& g, double beta,
                                               const ChainOptions& opt,
                                               int grid_points = 40, double level = 0.99);

// |frequency of `color` - 1/k| for uniform proper colorings against the
// coloring tail with c_i = 1/n.
TailCheckResult coloring_frequency_tail_check(const GraphAdj& g, int k, int color,
                                              const ChainOptions& opt,
                                              int grid_points = 40, double level = 0.99);

// |B(psi, theta)| under the true theta against the conditional
// least-squares tail with M = 2r.
TailCheckResult ising_ls_B_tail_check(const GraphAdj& g, double theta, double psi,
                                      const ChainOptions& opt, int grid_points = 40,
                                      double level = 0.99);

struct MeanCheckResult {
  MeanEstimate estimate;
  double bound = 0.0;
  double z = 0.0;
  bool passed = false;  // mean - z * SE <= bound
};

// MC estimate of (1/n) sum <eps~_i^2> against 2(1+b rho) b^2 rho^2 / n.
MeanCheckResult mean_field_average_check(const QuadraticModel& model,
                                         const ChainOptions& opt, double z = 2.576);

// Ising model on a graph with unit couplings at inverse temperature beta.
QuadraticModel ising_model(const GraphAdj& g, double beta, double h = 0.0);

// Draw one Ising sample for the estimation module (theta plays beta).
IsingSample sample_ising(const GraphAdj& g, double theta, long burn_in, RngStream& rng);

struct CoverageResult {
  int trials = 0;
  int covered = 0;
  double rate = 0.0;
};
// Repeated-simulation coverage of confidence_region at the true theta.
CoverageResult confidence_coverage_study(const GraphAdj& g, double theta,
                                         const std::vector<double>& grid, double alpha,
                                         int trials, std::uint64_t seed);

}  // namespace xpair
