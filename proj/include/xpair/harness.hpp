#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "xpair/bounds.hpp"
#include "xpair/rng.hpp"

namespace xpair {

// Regularized incomplete beta I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Exact (Clopper-Pearson) two-sided binomial confidence limits for k
// successes in m trials at confidence `level`.
double clopper_pearson_upper(long k, long m, double level);
double clopper_pearson_lower(long k, long m, double level);

// Empirical exceedance curve t -> #{ sample - offset >= t } / reps with
// exact binomial envelopes.
struct EmpiricalTail {
  Eigen::VectorXd t;
  std::vector<long> counts;
  long reps = 0;
  double level = 0.99;
  Eigen::VectorXd point;     // counts / reps
  Eigen::VectorXd ci_lower;  // per-t envelope
  Eigen::VectorXd ci_upper;
};

// 40 equally spaced points from 0 to the given upper quantile of the samples.
Eigen::VectorXd default_grid(const std::vector<double>& samples, int points = 40,
                             double quantile = 0.9999);

EmpiricalTail empirical_tail(const std::vector<double>& samples,
                             const Eigen::VectorXd& grid, double level = 0.99,
                             double offset = 0.0);

// Calls statistic(rep, stream) with an independent substream per replicate.
EmpiricalTail mc_tail(const std::function<double(long, RngStream&)>& statistic,
                      const Eigen::VectorXd& grid, long reps, RngStream rng,
                      double level = 0.99, double offset = 0.0);

struct VerificationRow {
  double t;
  double empirical;
  double ci_upper;
  double ci_lower;
  double bound;
  bool vacuous;   // bound >= 1
  bool violated;  // envelope lower limit above the bound
};

struct VerificationReport {
  std::string bound_name;
  std::vector<std::pair<std::string, double>> constants;
  std::string model;
  std::uint64_t seed = 0;
  double offset = 0.0;
  std::vector<VerificationRow> rows;
  bool passed = true;
  double vacuous_below = 0.0;  // bound is >= 1 for t below this grid point
};

VerificationReport verify_bound(const EmpiricalTail& empirical, const TailBound& bound,
                                std::uint64_t seed = 0, std::string model = "",
                                double offset = 0.0);

// Exceedance curve of an exactly enumerated statistic distribution
// (values with probabilities); used for the exact-tail acceptance checks.
struct ExactTail {
  Eigen::VectorXd t;
  Eigen::VectorXd prob;  // P(value >= t)
};
ExactTail exact_tail(const std::vector<std::pair<double, double>>& value_probs,
                     const Eigen::VectorXd& grid);

// Sample mean with a batch-means standard error, for samples taken from
// a (possibly autocorrelated) chain.
struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long samples = 0;
};
MeanEstimate batch_mean(const std::vector<double>& samples, int batches = 32);

// Runs fn(0), ..., fn(jobs-1) across worker threads.  Each job owns its
// output slot and its own RngStream, so results do not depend on the
// scheduling (threads = 0 picks the hardware count).
void parallel_jobs(int jobs, const std::function<void(int)>& fn, int threads = 0);

}  // namespace xpair
