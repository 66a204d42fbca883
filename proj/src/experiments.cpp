#include "xpair/experiments.hpp"

#include <cmath>

#include "xpair/errors.hpp"

namespace xpair {

long ChainOptions::resolved_burn_in(int n) const {
  return burn_in >= 0 ? burn_in : default_burn_in(n);
}

long ChainOptions::resolved_thin(int n) const {
  return thin >= 0 ? thin : std::max(1, n);
}

std::vector<double> gibbs_statistic_samples(const QuadraticModel& model,
                                            const SpinStatistic& stat,
                                            const ChainOptions& opt) {
  if (opt.reps < 1) throw config_error("gibbs_statistic_samples: reps must be >= 1");
  const int n = model.size();
  const int chains = std::max(1, opt.chains);
  const long per_chain = (opt.reps + chains - 1) / chains;
  std::vector<double> samples(per_chain * chains);
  parallel_jobs(chains, [&](int c) {
    RngStream rng(opt.seed, static_cast<std::uint64_t>(c));
    GibbsChain chain(model, random_spin_config(n, rng));
    chain.run(opt.resolved_burn_in(n), rng);
    for (long s = 0; s < per_chain; ++s) {
      chain.run(opt.resolved_thin(n), rng);
      samples[c * per_chain + s] = stat(chain.state(), chain.fields());
    }
  });
  samples.resize(opt.reps);
  return samples;
}

std::vector<double> coloring_statistic_samples(const GraphAdj& g, int k,
                                               const std::function<double(const Coloring&)>& stat,
                                               const ChainOptions& opt) {
  if (opt.reps < 1) throw config_error("coloring_statistic_samples: reps must be >= 1");
  const int chains = std::max(1, opt.chains);
  const long per_chain = (opt.reps + chains - 1) / chains;
  std::vector<double> samples(per_chain * chains);
  parallel_jobs(chains, [&](int c) {
    RngStream rng(opt.seed, static_cast<std::uint64_t>(c));
    Coloring x = greedy_coloring(g, k);
    for (long s = 0; s < opt.resolved_burn_in(g.n); ++s)
      x = glauber_coloring_step(g, k, x, rng);
    for (long s = 0; s < per_chain; ++s) {
      for (long i = 0; i < opt.resolved_thin(g.n); ++i)
        x = glauber_coloring_step(g, k, x, rng);
      samples[c * per_chain + s] = stat(x);
    }
  });
  samples.resize(opt.reps);
  return samples;
}

double curie_weiss_residual(double beta, double h, const SpinConfig& sigma) {
  const double m = magnetization(sigma);
  return m - std::tanh(beta * m + beta * h);
}

double local_field_residual(double beta, const SpinConfig& sigma,
                            const Eigen::VectorXd& fields) {
  return magnetization(sigma) - (beta * fields).array().tanh().mean();
}

double mean_squared_eps_tilde(const QuadraticModel& model, const Eigen::VectorXd& fields) {
  const Eigen::ArrayXd cond = (model.beta * fields).array().tanh();
  const Eigen::ArrayXd inner =
      model.beta * ((model.coupling * cond.matrix()) + model.field).array();
  return (cond - inner.tanh()).square().mean();
}

TailCheckResult curie_weiss_tail_check(int n, double beta, double h,
                                       const ChainOptions& opt, int grid_points,
                                       double level) {
  const QuadraticModel model = curie_weiss_model(n, beta, h);
  const auto samples = gibbs_statistic_samples(
      model,
      [beta, h](const SpinConfig& sigma, const Eigen::VectorXd&) {
        return std::abs(curie_weiss_residual(beta, h, sigma));
      },
      opt);
  const CurieWeissBounds bounds = curie_weiss_bounds(n, beta);
  TailCheckResult out;
  out.offset = bounds.offset;
  Eigen::VectorXd grid = default_grid(samples, grid_points);
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    grid[i] = std::max(grid[i] - bounds.offset, 0.0);
  out.empirical = empirical_tail(samples, grid, level, bounds.offset);
  out.bound = bounds.tail;
  out.report = verify_bound(out.empirical, out.bound, opt.seed,
                            "curie-weiss n=" + std::to_string(n), bounds.offset);
  return out;
}

TailCheckResult quadratic_residual_tail_check(const QuadraticModel& model,
                                              const ChainOptions& opt, int grid_points,
                                              double level) {
  const int n = model.size();
  const double normJ = operator_norm2(model.coupling);
  const double normJ2 = operator_norm2(model.coupling.array().square().matrix());
  const SkBounds bounds =
      sk_bounds(Eigen::VectorXd::Constant(n, 1.0 / n), model.beta, normJ, normJ2);
  const double beta = model.beta;
  const auto samples = gibbs_statistic_samples(
      model,
      [beta](const SpinConfig& sigma, const Eigen::VectorXd& fields) {
        return std::abs(local_field_residual(beta, sigma, fields));
      },
      opt);
  TailCheckResult out;
  out.empirical = empirical_tail(samples, default_grid(samples, grid_points), level);
  out.bound = bounds.tail;
  out.report = verify_bound(out.empirical, out.bound, opt.seed,
                            "quadratic n=" + std::to_string(n));
  return out;
}

QuadraticModel ising_model(const GraphAdj& g, double beta, double h) {
  return QuadraticModel(adjacency_matrix(g), Eigen::VectorXd::Constant(g.n, h), beta);
}

TailCheckResult ising_magnetization_tail_check(const GraphAdj& g, double beta,
                                               const ChainOptions& opt, int grid_points,
                                               double level) {
  const QuadraticModel model = ising_model(g, beta);
  const InterdependenceMatrix A = quadratic_interdependence(model);
  const TailBound bound = dobrushin_tail(A.a, Eigen::VectorXd::Constant(g.n, 2.0 / g.n));
  const auto samples = gibbs_statistic_samples(
      model,
      [](const SpinConfig& sigma, const Eigen::VectorXd&) {
        return std::abs(magnetization(sigma));
      },
      opt);
  TailCheckResult out;
  out.empirical = empirical_tail(samples, default_grid(samples, grid_points), level);
  out.bound = bound;
  out.report = verify_bound(out.empirical, out.bound, opt.seed,
                            "ising n=" + std::to_string(g.n));
  return out;
}

TailCheckResult coloring_frequency_tail_check(const GraphAdj& g, int k, int color,
                                              const ChainOptions& opt, int grid_points,
                                              double level) {
  const double gamma = static_cast<double>(k - 2 * g.max_degree) / (k - g.max_degree);
  if (!(gamma > 0.0))
    throw config_error("coloring_frequency_tail_check: need k > 2 * max degree");
  TailBound bound{"coloring",
                  {{"gamma", gamma}, {"n", double(g.n)}, {"k", double(k)}},
                  [gamma, n = g.n](double t) {
                    return 2.0 * std::exp(-n * gamma * t * t);
                  }};
  const double mean = 1.0 / k;
  const auto samples = coloring_statistic_samples(
      g, k,
      [color, mean, n = g.n](const Coloring& x) {
        return std::abs((x.array() == color).cast<double>().sum() / n - mean);
      },
      opt);
  TailCheckResult out;
  out.empirical = empirical_tail(samples, default_grid(samples, grid_points), level);
  out.bound = bound;
  out.report = verify_bound(out.empirical, out.bound, opt.seed,
                            "coloring n=" + std::to_string(g.n) + " k=" + std::to_string(k));
  return out;
}

TailCheckResult ising_ls_B_tail_check(const GraphAdj& g, double theta, double psi,
                                      const ChainOptions& opt, int grid_points,
                                      double level) {
  const QuadraticModel model = ising_model(g, theta);
  const auto samples = gibbs_statistic_samples(
      model,
      [&g, theta, psi](const SpinConfig& sigma, const Eigen::VectorXd&) {
        return std::abs(decompose_AB(IsingSample(g, sigma), psi, theta).B);
      },
      opt);
  TailCheckResult out;
  out.empirical = empirical_tail(samples, default_grid(samples, grid_points), level);
  out.bound = lslmm_tail(2.0 * g.max_degree, g.n);
  out.report = verify_bound(out.empirical, out.bound, opt.seed,
                            "ising-ls n=" + std::to_string(g.n));
  return out;
}

MeanCheckResult mean_field_average_check(const QuadraticModel& model,
                                         const ChainOptions& opt, double z) {
  const MeanFieldBounds bounds = mean_field_bounds(model.coupling, model.field, model.beta);
  const auto samples = gibbs_statistic_samples(
      model,
      [&model](const SpinConfig&, const Eigen::VectorXd& fields) {
        return mean_squared_eps_tilde(model, fields);
      },
      opt);
  MeanCheckResult out;
  out.estimate = batch_mean(samples);
  out.bound = bounds.averaged_second_moment;
  out.z = z;
  out.passed = out.estimate.mean - z * out.estimate.std_error <= out.bound;
  return out;
}

IsingSample sample_ising(const GraphAdj& g, double theta, long burn_in, RngStream& rng) {
  const QuadraticModel model = ising_model(g, theta);
  return IsingSample(g, sample_gibbs(model, burn_in, rng));
}

CoverageResult confidence_coverage_study(const GraphAdj& g, double theta,
                                         const std::vector<double>& grid, double alpha,
                                         int trials, std::uint64_t seed) {
  CoverageResult out;
  out.trials = trials;
  const long burn_in = default_burn_in(g.n);
  for (int trial = 0; trial < trials; ++trial) {
    RngStream rng(seed, static_cast<std::uint64_t>(trial));
    const IsingSample sample = sample_ising(g, theta, burn_in, rng);
    const ConfidenceRegion region = confidence_region(sample, grid, alpha);
    for (double kept : region.retained)
      if (std::abs(kept - theta) < 1e-12) {
        ++out.covered;
        break;
      }
  }
  out.rate = trials > 0 ? static_cast<double>(out.covered) / trials : 0.0;
  return out;
}

}  // namespace xpair
