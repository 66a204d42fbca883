#include <cmath>

#include "doctest.h"
#include "xpair/errors.hpp"
#include "xpair/estimation.hpp"
#include "xpair/experiments.hpp"
#include "xpair/graph.hpp"
#include "xpair/harness.hpp"

using namespace xpair;

TEST_CASE("conditional least squares objective") {
  RngStream rng(2);
  const GraphAdj ring = cycle_graph(6);
  const IsingSample sample(ring, random_spin_config(6, rng));

  // theta = 0: S = (1/n) sum x_i^2 = 1 for +-1 data
  CHECK(conditional_ls_objective(sample, 0.0) == doctest::Approx(1.0));

  // edgeless graph: flat objective
  const IsingSample lonely(edgeless_graph(5), random_spin_config(5, rng));
  for (double theta : {0.0, 0.5, 2.0})
    CHECK(conditional_ls_objective(lonely, theta) == doctest::Approx(1.0));

  // 4-cycle, all-ones sample: every neighbor sum is 2
  const IsingSample aligned(cycle_graph(4), SpinConfig::Constant(4, 1.0));
  const double r = 1.0 - std::tanh(1.0);
  CHECK(conditional_ls_objective(aligned, 0.5) == doctest::Approx(r * r));

  CHECK_THROWS_AS((void)conditional_ls_objective(sample, -0.1), config_error);
}

TEST_CASE("A + B decomposition") {
  RngStream rng(5);
  const GraphAdj g = grid_graph(3, 3);

  // psi = theta collapses both terms
  const IsingSample sample(g, random_spin_config(9, rng));
  const ABDecomposition same = decompose_AB(sample, 0.4, 0.4);
  CHECK(same.A == doctest::Approx(0.0));
  CHECK(same.B == doctest::Approx(0.0));

  // algebraic identity S(psi) - S(theta) = A + B, exactly
  for (int rep = 0; rep < 30; ++rep) {
    const IsingSample s(g, random_spin_config(9, rng));
    const double psi = 2.0 * rng.next_double();
    const double theta = 2.0 * rng.next_double();
    const ABDecomposition ab = decompose_AB(s, psi, theta);
    CHECK(ab.A >= 0.0);
    CHECK(conditional_ls_objective(s, psi) - conditional_ls_objective(s, theta) ==
          doctest::Approx(ab.A + ab.B).epsilon(1e-12));
  }

  // E_theta B(psi, theta) = 0 exactly, by conditioning site by site
  const double theta = 0.25, psi = 0.6;
  const QuadraticModel model = ising_model(g, theta);
  const ExactGibbs gibbs = enumerate_gibbs(model);
  const double exact_mean_B = exact_expectation(gibbs, [&](const SpinConfig& x) {
    return decompose_AB(IsingSample(g, x), psi, theta).B;
  });
  CHECK(exact_mean_B == doctest::Approx(0.0).epsilon(1e-12));

  // Monte Carlo mean of B over sampled configurations sits at zero
  ChainOptions opt;
  opt.reps = 10000;
  opt.seed = 11;
  const auto samples = gibbs_statistic_samples(
      model,
      [&g, psi, theta](const SpinConfig& x, const Eigen::VectorXd&) {
        return decompose_AB(IsingSample(g, x), psi, theta).B;
      },
      opt);
  const MeanEstimate mc = batch_mean(samples);
  CHECK(std::abs(mc.mean) < 4.0 * mc.std_error);
}

TEST_CASE("lslmm tail") {
  const TailBound zero_m = lslmm_tail(0.0, 32);
  CHECK(zero_m(1.0) == doctest::Approx(2.0 * std::exp(-1.0)));
  // Ising preset M = 2r
  const TailBound ising = lslmm_tail(2.0 * 4, 64);
  CHECK(ising(1.0) == doctest::Approx(2.0 * std::exp(-64.0 / 800.0)));
  double prev = ising(0.0);
  for (double t = 0.1; t < 4.0; t += 0.1) {
    CHECK(ising(t) <= prev);
    prev = ising(t);
  }
}

TEST_CASE("covering number bound") {
  CHECK(covering_number_ising(1.0 / std::exp(1.0), 2) == 5);  // ceil(e + 2)
  long prev = covering_number_ising(0.01, 3);
  for (double eps : {0.05, 0.1, 0.3, 0.6, 0.9}) {
    const long nd = covering_number_ising(eps, 3);
    CHECK(nd <= prev);
    prev = nd;
  }
  CHECK_THROWS_AS((void)covering_number_ising(1.5, 2), config_error);
}

TEST_CASE("confidence region") {
  RngStream rng(7);
  const GraphAdj g = grid_graph(3, 3);
  const IsingSample sample = sample_ising(g, 0.3, 4000, rng);

  std::vector<double> grid;
  for (double theta = 0.0; theta <= 1.0 + 1e-9; theta += 0.05) grid.push_back(theta);

  // alpha -> 1: threshold collapses to the 4 eps offset
  const ConfidenceRegion tight = confidence_region(sample, grid, 0.999999);
  CHECK(tight.t_alpha >= 0.0);
  CHECK(tight.threshold >= 4.0 * tight.epsilon);

  const ConfidenceRegion region = confidence_region(sample, grid, 0.1);
  CHECK(region.threshold == doctest::Approx(4.0 * region.epsilon + region.t_alpha));
  CHECK(!region.retained.empty());
  // region is the sublevel set of S relative to the grid minimum
  const GridMinimum gm = grid_minimize_S(sample, grid);
  for (double theta : grid) {
    const bool inside =
        conditional_ls_objective(sample, theta) - gm.value <= region.threshold;
    const bool reported =
        std::find(region.retained.begin(), region.retained.end(), theta) !=
        region.retained.end();
    CHECK(inside == reported);
  }

  // edgeless graph: S is flat, everything is retained
  const IsingSample flat(edgeless_graph(9), random_spin_config(9, rng));
  CHECK(confidence_region(flat, grid, 0.1).retained.size() == grid.size());

  CHECK_THROWS_AS((void)confidence_region(sample, {}, 0.1), config_error);
  CHECK_THROWS_AS((void)confidence_region(sample, grid, 0.0), config_error);
}

TEST_CASE("grid minimization") {
  RngStream rng(8);
  const IsingSample flat(edgeless_graph(4), random_spin_config(4, rng));
  // constant S: tie broken toward the smallest grid point
  const GridMinimum gm = grid_minimize_S(flat, {0.7, 0.1, 0.4});
  CHECK(gm.theta == doctest::Approx(0.1));

  const IsingSample single(cycle_graph(4), SpinConfig::Constant(4, 1.0));
  CHECK(grid_minimize_S(single, {0.3}).theta == doctest::Approx(0.3));

  // data sampled at theta = 0: the dense-grid minimizer lies within one
  // grid spacing of a stationary point of S, or on the boundary theta=0
  std::vector<double> dense;
  for (double t = 0.0; t <= 3.0; t += 0.002) dense.push_back(t);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    RngStream data_rng(31, seed);
    const IsingSample uniform(cycle_graph(4), random_spin_config(4, data_rng));
    const GridMinimum best = grid_minimize_S(uniform, dense);
    const double h = 0.002;
    if (best.theta > dense.front() + 1e-12 && best.theta < dense.back() - 1e-12) {
      const double left = conditional_ls_objective(uniform, best.theta - h);
      const double right = conditional_ls_objective(uniform, best.theta + h);
      CHECK(best.value <= left + 1e-15);
      CHECK(best.value <= right + 1e-15);
    } else {
      // boundary minimum: S must be nondecreasing into the interior
      const double inward = best.theta <= dense.front() + 1e-12 ? best.theta + h
                                                                : best.theta - h;
      CHECK(best.value <= conditional_ls_objective(uniform, inward) + 1e-15);
    }
  }
}

TEST_CASE("B-statistic tail stays below its bound on a small grid") {
  ChainOptions opt;
  opt.reps = 3000;
  opt.seed = 41;
  const TailCheckResult check = ising_ls_B_tail_check(grid_graph(4, 4), 0.2, 0.5, opt);
  CHECK(check.report.passed);
}

TEST_CASE("confidence coverage on a small graph") {
  const GraphAdj g = grid_graph(3, 3);
  std::vector<double> grid;
  for (double theta = 0.0; theta <= 1.0 + 1e-9; theta += 0.05) grid.push_back(theta);
  const CoverageResult coverage = confidence_coverage_study(g, 0.2, grid, 0.1, 25, 99);
  CHECK(coverage.trials == 25);
  CHECK(coverage.rate >= 0.9);  // conservative thresholds cover essentially always
}
