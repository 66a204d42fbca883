#include <cmath>
#include <map>

#include "doctest.h"
#include "test_util.hpp"
#include "xpair/errors.hpp"
#include "xpair/experiments.hpp"
#include "xpair/pair_engine.hpp"

using namespace xpair;

namespace {

// f(sigma) = m - (1/n) sum_i tanh(beta m_i), the canonical residual with
// F(sigma, sigma') = sum_i (sigma_i - sigma'_i).
std::vector<double> residual_table(const QuadraticModel& model, const ExactGibbs& gibbs) {
  return tabulate(gibbs, [&model](const SpinConfig& s) {
    return local_field_residual(model.beta, s, local_fields(model, s));
  });
}

PairValueFn spin_sum_difference(int n) {
  return [n](std::uint64_t x, std::uint64_t y) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += spin_at(x, i) - spin_at(y, i);
    return acc;
  };
}

}  // namespace

TEST_CASE("v_exact on a constant function is identically zero") {
  const QuadraticModel model = curie_weiss_model(4, 0.7, 0.0);
  const ExactGibbs gibbs = enumerate_gibbs(model);
  const std::vector<double> f(gibbs.size(), 3.14);
  const auto vs = v_exact(gibbs, gibbs_transition_fn(model), f,
                          [](std::uint64_t, std::uint64_t) { return 1.0; });
  for (const VFunctionals& v : vs) {
    CHECK(v.v == 0.0);
    CHECK(v.v1 == 0.0);
    CHECK(v.v2 == 0.0);
  }
}

TEST_CASE("v_exact for independent coins with f = sum gives v = n everywhere") {
  const int n = 5;
  const QuadraticModel model(Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n), 0.0);
  const ExactGibbs gibbs = enumerate_gibbs(model);
  const auto f = tabulate(gibbs, [](const SpinConfig& s) { return s.sum(); });
  const PairValueFn F = [&f, n](std::uint64_t x, std::uint64_t y) {
    return n * (f[x] - f[y]);
  };
  const auto vs = v_exact(gibbs, gibbs_transition_fn(model), f, F);
  for (const VFunctionals& v : vs) {
    CHECK(v.v == doctest::Approx(double(n)).epsilon(1e-12));
    CHECK(v.v1 == doctest::Approx(double(n)).epsilon(1e-12));
  }
}

TEST_CASE("v_exact on Curie-Weiss stays below the Lipschitz product bound") {
  for (double beta : {0.2, 0.5, 1.0}) {
    const QuadraticModel model = curie_weiss_model(4, beta, 0.0);
    const ExactGibbs gibbs = enumerate_gibbs(model);
    const auto f = residual_table(model, gibbs);
    const auto vs = v_exact(gibbs, gibbs_transition_fn(model), f, spin_sum_difference(4));
    double vmax = 0.0, ev = 0.0, ef2 = 0.0;
    for (std::uint64_t s = 0; s < gibbs.size(); ++s) {
      vmax = std::max(vmax, vs[s].v);
      ev += gibbs.probs[s] * vs[s].v;
      ef2 += gibbs.probs[s] * f[s] * f[s];
      CHECK(vs[s].v >= 0.0);
      CHECK(vs[s].v2 >= 0.0);
      CHECK(std::abs(vs[s].v1) <= vs[s].v + 1e-15);
    }
    // |f - f'| <= 2(1+beta)/n and |F| <= 2 give v <= 2(1+beta)/n
    CHECK(vmax <= 2.0 * (1.0 + beta) / 4.0 + 1e-12);
    // E f^2 <= E v
    CHECK(ef2 <= ev + 1e-12);
  }
}

TEST_CASE("v_estimate agrees with v_exact") {
  const QuadraticModel model = curie_weiss_model(4, 0.6, 0.0);
  const ExactGibbs gibbs = enumerate_gibbs(model);
  const auto table = residual_table(model, gibbs);
  const auto vs =
      v_exact(gibbs, gibbs_transition_fn(model), table, spin_sum_difference(4));

  auto f = [&model](const SpinConfig& s) {
    return local_field_residual(model.beta, s, local_fields(model, s));
  };
  auto F = [](const SpinConfig& x, const SpinConfig& y) { return (x - y).sum(); };

  RngStream rng(3);
  const SpinConfig x = decode_state(0b0110, 4);
  const VEstimate est = v_estimate(x, gibbs_pair_kernel(model), f, F, 40000, rng);
  const VFunctionals& exact = vs[0b0110];
  CHECK(std::abs(est.mean.v - exact.v) < 4.0 * est.std_error.v + 1e-12);
  CHECK(std::abs(est.mean.v1 - exact.v1) < 4.0 * est.std_error.v1 + 1e-12);
  CHECK(std::abs(est.mean.v2 - exact.v2) < 4.0 * est.std_error.v2 + 1e-12);
}

TEST_CASE("v_estimate trivia: constant f and deterministic kernel") {
  const QuadraticModel model = curie_weiss_model(3, 0.5, 0.0);
  RngStream rng(9);
  const SpinConfig x = SpinConfig::Constant(3, 1.0);
  auto constant = [](const SpinConfig&) { return 2.0; };
  auto F = [](const SpinConfig& a, const SpinConfig& b) { return (a - b).sum(); };
  const VEstimate est = v_estimate(x, gibbs_pair_kernel(model), constant, F, 500, rng);
  CHECK(est.mean.v == 0.0);
  CHECK(est.std_error.v == 0.0);

  PairKernel<SpinConfig> frozen{[](const SpinConfig& s, RngStream&) { return s; },
                                "identity"};
  auto m = [](const SpinConfig& s) { return magnetization(s); };
  const VEstimate fixed = v_estimate(x, frozen, m, F, 500, rng);
  CHECK(fixed.mean.v == 0.0);
  CHECK(fixed.std_error.v == 0.0);
  CHECK_THROWS_AS((void)v_estimate(x, frozen, m, F, 0, rng), config_error);
}

TEST_CASE("maximal coupling: equal inputs always agree") {
  RngStream rng(5);
  Eigen::VectorXd s(3), w(3);
  s << 1.0, 2.0, 3.0;
  w << 0.2, 0.5, 0.3;
  const DiscreteDistribution p(s, w);
  for (int i = 0; i < 200; ++i) {
    const auto [a, b] = maximal_coupling_draw(p, p, rng);
    CHECK(a == b);
  }
}

TEST_CASE("maximal coupling disagreement equals total variation") {
  RngStream rng(6);
  const long reps = 1000000;

  // Bernoulli pair: disagreement -> |p - q|
  const DiscreteDistribution bp = two_point_distribution(0.7);
  const DiscreteDistribution bq = two_point_distribution(0.4);
  long disagree = 0;
  for (long i = 0; i < reps; ++i) {
    const auto [a, b] = maximal_coupling_draw(bp, bq, rng);
    disagree += a != b;
  }
  CHECK(std::abs(disagree / double(reps) - 0.3) <
        3.0 * std::sqrt(0.3 * 0.7 / reps));

  // uniform{1..4} vs uniform{1..2}: disagreement -> 1/2 and marginals hold
  Eigen::VectorXd s4(4), w4(4), s2(2), w2(2);
  s4 << 1, 2, 3, 4;
  w4.setConstant(0.25);
  s2 << 1, 2;
  w2.setConstant(0.5);
  const DiscreteDistribution u4(s4, w4), u2(s2, w2);
  CHECK(tv_distance(u4, u2) == doctest::Approx(0.5));
  disagree = 0;
  std::map<int, long> first_counts;
  const long reps2 = 400000;
  for (long i = 0; i < reps2; ++i) {
    const auto [a, b] = maximal_coupling_draw(u4, u2, rng);
    disagree += a != b;
    ++first_counts[static_cast<int>(a)];
  }
  CHECK(std::abs(disagree / double(reps2) - 0.5) < 3.0 * std::sqrt(0.25 / reps2));
  for (int atom = 1; atom <= 4; ++atom)
    CHECK(std::abs(first_counts[atom] - reps2 * 0.25) <
          4.0 * std::sqrt(reps2 * 0.25 * 0.75));
}

TEST_CASE("greedy coupled step keeps coalesced chains together") {
  const QuadraticModel model = curie_weiss_model(5, 0.4, 0.1);
  RngStream rng(7);
  SpinConfig x = random_spin_config(5, rng);
  SpinConfig y = x;
  for (int s = 0; s < 300; ++s) {
    std::tie(x, y) = greedy_coupled_step(model, x, y, rng);
    REQUIRE(states_equal(x, y));
  }
}

TEST_CASE("greedy coupled step never increases Hamming distance for independent coordinates") {
  const int n = 6;
  const QuadraticModel model(Eigen::MatrixXd::Zero(n, n),
                             Eigen::VectorXd::Constant(n, 0.2), 1.0);
  RngStream rng(8);
  SpinConfig x = random_spin_config(n, rng);
  SpinConfig y = random_spin_config(n, rng);
  int distance = static_cast<int>((x.array() != y.array()).count());
  for (int s = 0; s < 400; ++s) {
    std::tie(x, y) = greedy_coupled_step(model, x, y, rng);
    const int next = static_cast<int>((x.array() != y.array()).count());
    REQUIRE(next <= distance);
    distance = next;
  }
}

TEST_CASE("one-step disagreement law obeys B = (1-1/n) I + (1/n) A exactly") {
  const int n = 4;
  const QuadraticModel model = curie_weiss_model(n, 0.2, 0.0);
  const InterdependenceMatrix A = quadratic_interdependence(model);
  const Eigen::MatrixXd B =
      (1.0 - 1.0 / n) * Eigen::MatrixXd::Identity(n, n) + A.a / n;

  for (std::uint64_t xs = 0; xs < 16; ++xs)
    for (std::uint64_t ys = 0; ys < 16; ++ys) {
      const SpinConfig x = decode_state(xs, n), y = decode_state(ys, n);
      Eigen::VectorXd ell0(n);
      for (int i = 0; i < n; ++i) ell0[i] = x[i] != y[i] ? 1.0 : 0.0;
      const Eigen::VectorXd bound = B * ell0;
      for (int i = 0; i < n; ++i) {
        // exact one-step disagreement probability of the greedy coupling
        const double tv = tv_distance(conditional_spin_distribution(model, x, i),
                                      conditional_spin_distribution(model, y, i));
        const double exact = (1.0 - 1.0 / n) * ell0[i] + tv / n;
        CHECK(exact <= bound[i] + 1e-12);
      }
    }
}

TEST_CASE("coupled step marginals match the uncoupled kernel (chi-square)") {
  const int n = 4;
  const QuadraticModel model = curie_weiss_model(n, 0.3, 0.0);
  RngStream rng(10);
  const SpinConfig x = decode_state(0b0101, n);
  const SpinConfig y = decode_state(0b0011, n);
  std::map<std::uint64_t, long> counts;
  const long reps = 200000;
  for (long s = 0; s < reps; ++s)
    ++counts[encode_state(greedy_coupled_step(model, x, y, rng).first)];
  double chisq = 0.0;
  int df = -1;
  for (const SpinTransition& tr : gibbs_transitions(model, 0b0101)) {
    const double expected = reps * tr.prob;
    const double diff = counts[tr.to] - expected;
    chisq += diff * diff / expected;
    ++df;
  }
  CHECK(chisq < test_util::chisq_threshold(df, 4.0));
}

TEST_CASE("coupling_time trivia and coupon-collector scaling") {
  const int n = 6;
  const QuadraticModel model(Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n), 0.0);
  const CoupledKernel<SpinConfig> coupled = greedy_coupled_kernel(model);
  RngStream rng(11);

  const SpinConfig same = random_spin_config(n, rng);
  CHECK(coupling_time(same, same, coupled, 10, rng) == 0);

  // chains differing everywhere: coupon collector, mean n * H_n
  double harmonic = 0.0;
  for (int i = 1; i <= n; ++i) harmonic += 1.0 / i;
  const double expected = n * harmonic;
  const long trials = 10000;
  double sum = 0.0, sumsq = 0.0;
  for (long t = 0; t < trials; ++t) {
    const SpinConfig x = SpinConfig::Constant(n, 1.0);
    const SpinConfig y = SpinConfig::Constant(n, -1.0);
    const auto time = coupling_time(x, y, coupled, 100000, rng);
    REQUIRE(time.has_value());
    sum += *time;
    sumsq += double(*time) * double(*time);
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sumsq / trials - mean * mean) / trials);
  CHECK(std::abs(mean - expected) < 4.0 * se);

  // single-site disagreement: geometric with success probability 1/n
  sum = 0.0;
  sumsq = 0.0;
  for (long t = 0; t < trials; ++t) {
    SpinConfig x = SpinConfig::Constant(n, 1.0);
    SpinConfig y = x;
    y[2] = -1.0;
    const auto time = coupling_time(x, y, coupled, 100000, rng);
    REQUIRE(time.has_value());
    sum += *time;
    sumsq += double(*time) * double(*time);
  }
  const double mean1 = sum / trials;
  const double se1 = std::sqrt((sumsq / trials - mean1 * mean1) / trials);
  CHECK(std::abs(mean1 - n) < 4.0 * se1);

  // cap exceeded is reported, not silently truncated
  SpinConfig x = SpinConfig::Constant(n, 1.0);
  SpinConfig y = -x;
  CHECK(!coupling_time(x, y, coupled, 1, rng).has_value());
}

TEST_CASE("F_from_coupling: coalesced start gives exactly zero") {
  const QuadraticModel model = curie_weiss_model(4, 0.5, 0.0);
  RngStream rng(12);
  const SpinConfig x = random_spin_config(4, rng);
  auto m = [](const SpinConfig& s) { return magnetization(s); };
  const FEstimate est =
      F_from_coupling(x, x, m, greedy_coupled_kernel(model), 1000, 1e-9, 100, rng);
  CHECK(est.value == 0.0);
  CHECK(est.std_error == 0.0);
  CHECK(est.converged);
}

TEST_CASE("F_from_coupling matches the exact Poisson series") {
  const int n = 4;

  SUBCASE("independent coordinates, f = magnetization, single-site difference") {
    const QuadraticModel model(Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n), 0.0);
    const ExactGibbs gibbs = enumerate_gibbs(model);
    const auto table = tabulate(gibbs, magnetization);
    const auto series =
        exact_poisson_series(gibbs, gibbs_transition_fn(model), table, 4000, 1e-13);

    SpinConfig x = SpinConfig::Constant(n, 1.0);
    SpinConfig y = x;
    y[1] = -1.0;
    const double exact = series[encode_state(x)] - series[encode_state(y)];
    // the bounded-difference picture: |F| <= n * c_i with c_i = 2/n
    CHECK(std::abs(exact) <= 2.0 + 1e-9);
    CHECK(exact == doctest::Approx(2.0).epsilon(1e-6));

    RngStream rng(13);
    auto m = [](const SpinConfig& s) { return magnetization(s); };
    const FEstimate est =
        F_from_coupling(x, y, m, greedy_coupled_kernel(model), 5000, 1e-4, 4000, rng);
    CHECK(est.converged);
    CHECK(std::abs(est.value - exact) < 4.0 * est.std_error + 1e-3);
  }

  SUBCASE("Curie-Weiss residual f") {
    const QuadraticModel model = curie_weiss_model(n, 0.4, 0.0);
    const ExactGibbs gibbs = enumerate_gibbs(model);
    const auto table = residual_table(model, gibbs);
    const auto series =
        exact_poisson_series(gibbs, gibbs_transition_fn(model), table, 4000, 1e-13);

    const SpinConfig x = decode_state(0b1010, n), y = decode_state(0b1111, n);
    const double exact = series[0b1010] - series[0b1111];
    RngStream rng(14);
    auto f = [&model](const SpinConfig& s) {
      return local_field_residual(model.beta, s, local_fields(model, s));
    };
    const FEstimate est =
        F_from_coupling(x, y, f, greedy_coupled_kernel(model), 5000, 1e-4, 6000, rng);
    CHECK(est.converged);
    CHECK(std::abs(est.value - exact) < 4.0 * est.std_error + 1e-3);

    // antisymmetry within Monte Carlo error
    RngStream rng2(14);
    const FEstimate mirrored =
        F_from_coupling(y, x, f, greedy_coupled_kernel(model), 5000, 1e-4, 6000, rng2);
    CHECK(std::abs(mirrored.value + est.value) <
          4.0 * (est.std_error + mirrored.std_error) + 1e-3);
  }
}

TEST_CASE("variance identity") {
  SUBCASE("constant f gives zero on both sides") {
    const QuadraticModel model = curie_weiss_model(3, 0.8, 0.0);
    const ExactGibbs gibbs = enumerate_gibbs(model);
    const std::vector<double> f(gibbs.size(), 0.0);
    const auto check = variance_identity_check(
        gibbs, gibbs_transition_fn(model), f,
        [](std::uint64_t, std::uint64_t) { return 0.0; });
    CHECK(check.variance == doctest::Approx(0.0));
    CHECK(check.half_pair_expectation == doctest::Approx(0.0));
  }

  SUBCASE("independent coins, f = sum, F = n(x - y): both sides equal n") {
    const int n = 6;
    const QuadraticModel model(Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n), 0.0);
    const ExactGibbs gibbs = enumerate_gibbs(model);
    const auto f = tabulate(gibbs, [](const SpinConfig& s) { return s.sum(); });
    const auto check = variance_identity_check(
        gibbs, gibbs_transition_fn(model), f,
        [&f, n](std::uint64_t x, std::uint64_t y) { return n * (f[x] - f[y]); });
    CHECK(check.variance == doctest::Approx(double(n)).epsilon(1e-12));
    CHECK(check.half_pair_expectation == doctest::Approx(double(n)).epsilon(1e-12));
    CHECK(check.gap < 1e-10);
  }

  SUBCASE("Curie-Weiss n=4 beta=0.5") {
    const QuadraticModel model = curie_weiss_model(4, 0.5, 0.0);
    const ExactGibbs gibbs = enumerate_gibbs(model);
    const auto f = residual_table(model, gibbs);
    const auto check = variance_identity_check(gibbs, gibbs_transition_fn(model), f,
                                               spin_sum_difference(4));
    CHECK(check.gap < 1e-10);
    CHECK(check.premise_error < 1e-12);
  }

  SUBCASE("premise violation is rejected") {
    const QuadraticModel model = curie_weiss_model(3, 0.5, 0.0);
    const ExactGibbs gibbs = enumerate_gibbs(model);
    const auto f = tabulate(gibbs, magnetization);
    CHECK_THROWS_AS((void)variance_identity_check(
                        gibbs, gibbs_transition_fn(model), f,
                        [](std::uint64_t, std::uint64_t) { return 5.0; }),
                    numerical_error);
  }
}
