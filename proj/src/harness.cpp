#include "xpair/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "xpair/errors.hpp"

namespace xpair {

namespace {

// Lentz continued fraction for the incomplete beta function.
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 400;
  constexpr double kEps = 1e-15, kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw numerical_error("regularized_incomplete_beta: continued fraction stalled");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw config_error("incomplete beta: need a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

namespace {

// Quantile of Beta(a, b) by bisection on the regularized incomplete beta.
double beta_quantile(double p, double a, double b) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (regularized_incomplete_beta(a, b, mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double clopper_pearson_upper(long k, long m, double level) {
  if (m < 1 || k < 0 || k > m) throw config_error("clopper_pearson: bad counts");
  if (!(level > 0.0 && level < 1.0)) throw config_error("clopper_pearson: bad level");
  if (k == m) return 1.0;
  const double alpha = 1.0 - level;
  return beta_quantile(1.0 - alpha / 2.0, k + 1.0, static_cast<double>(m - k));
}

double clopper_pearson_lower(long k, long m, double level) {
  if (m < 1 || k < 0 || k > m) throw config_error("clopper_pearson: bad counts");
  if (!(level > 0.0 && level < 1.0)) throw config_error("clopper_pearson: bad level");
  if (k == 0) return 0.0;
  const double alpha = 1.0 - level;
  return beta_quantile(alpha / 2.0, static_cast<double>(k), static_cast<double>(m - k + 1));
}

Eigen::VectorXd default_grid(const std::vector<double>& samples, int points,
                             double quantile) {
  if (samples.empty()) throw config_error("default_grid: no samples");
  if (points < 2) throw config_error("default_grid: need at least two points");
  std::vector<double> sorted(samples);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t idx = std::min(
      sorted.size() - 1,
      static_cast<std::size_t>(std::floor(quantile * (sorted.size() - 1))));
  const double hi = std::max(sorted[idx], 0.0);
  Eigen::VectorXd grid(points);
  for (int i = 0; i < points; ++i) grid[i] = hi * i / (points - 1.0);
  return grid;
}

EmpiricalTail empirical_tail(const std::vector<double>& samples,
                             const Eigen::VectorXd& grid, double level, double offset) {
  if (samples.empty()) throw config_error("empirical_tail: no samples");
  EmpiricalTail out;
  out.t = grid;
  out.reps = static_cast<long>(samples.size());
  out.level = level;
  out.counts.assign(grid.size(), 0);
  std::vector<double> sorted(samples);
  std::sort(sorted.begin(), sorted.end());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double threshold = offset + grid[i];
    out.counts[i] = static_cast<long>(
        sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), threshold));
  }
  out.point.resize(grid.size());
  out.ci_lower.resize(grid.size());
  out.ci_upper.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    out.point[i] = static_cast<double>(out.counts[i]) / out.reps;
    out.ci_lower[i] = clopper_pearson_lower(out.counts[i], out.reps, level);
    out.ci_upper[i] = clopper_pearson_upper(out.counts[i], out.reps, level);
  }
  return out;
}

EmpiricalTail mc_tail(const std::function<double(long, RngStream&)>& statistic,
                      const Eigen::VectorXd& grid, long reps, RngStream rng,
                      double level, double offset) {
  if (reps < 100) throw config_error("mc_tail: need reps >= 100");
  std::vector<double> samples(reps);
  for (long r = 0; r < reps; ++r) {
    RngStream stream = rng.substream(r);
    try {
      samples[r] = statistic(r, stream);
    } catch (const std::exception& e) {
      throw numerical_error("mc_tail: generator failed at replicate " +
                            std::to_string(r) + ": " + e.what());
    }
  }
  return empirical_tail(samples, grid, level, offset);
}

VerificationReport verify_bound(const EmpiricalTail& empirical, const TailBound& bound,
                                std::uint64_t seed, std::string model, double offset) {
  VerificationReport out;
  out.bound_name = bound.name;
  out.constants = bound.constants;
  out.model = std::move(model);
  out.seed = seed;
  out.offset = offset;
  out.rows.reserve(empirical.t.size());
  for (Eigen::Index i = 0; i < empirical.t.size(); ++i) {
    VerificationRow row{};
    row.t = empirical.t[i];
    row.empirical = empirical.point[i];
    row.ci_lower = empirical.ci_lower[i];
    row.ci_upper = empirical.ci_upper[i];
    row.bound = bound(row.t);
    row.vacuous = row.bound >= 1.0;
    row.violated = row.ci_lower > row.bound;
    if (row.vacuous) out.vacuous_below = std::max(out.vacuous_below, row.t);
    if (row.violated) out.passed = false;
    out.rows.push_back(row);
  }
  return out;
}

ExactTail exact_tail(const std::vector<std::pair<double, double>>& value_probs,
                     const Eigen::VectorXd& grid) {
  ExactTail out;
  out.t = grid;
  out.prob.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    double p = 0.0;
    for (const auto& [value, prob] : value_probs)
      if (value >= grid[i]) p += prob;
    out.prob[i] = p;
  }
  return out;
}

void parallel_jobs(int jobs, const std::function<void(int)>& fn, int threads) {
  if (jobs <= 0) return;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, jobs));
  if (threads == 1) {
    for (int j = 0; j < jobs; ++j) fn(j);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string message;
  std::mutex message_lock;
  auto worker = [&]() {
    for (int j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) {
      try {
        fn(j);
      } catch (const std::exception& e) {
        const std::scoped_lock lock(message_lock);
        failed = true;
        if (message.empty())
          message = "job " + std::to_string(j) + ": " + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failed) throw numerical_error("parallel_jobs: " + message);
}

MeanEstimate batch_mean(const std::vector<double>& samples, int batches) {
  if (samples.empty()) throw config_error("batch_mean: no samples");
  MeanEstimate out;
  out.samples = static_cast<long>(samples.size());
  double total = 0.0;
  for (double s : samples) total += s;
  out.mean = total / static_cast<double>(samples.size());
  batches = std::min<long>(batches, out.samples);
  if (batches < 2) return out;
  const long per = out.samples / batches;
  std::vector<double> means;
  means.reserve(batches);
  for (int b = 0; b < batches; ++b) {
    double acc = 0.0;
    for (long i = b * per; i < (b + 1) * per; ++i) acc += samples[i];
    means.push_back(acc / per);
  }
  double ss = 0.0, bm = 0.0;
  for (double m : means) bm += m;
  bm /= batches;
  for (double m : means) ss += (m - bm) * (m - bm);
  out.std_error = std::sqrt(ss / (batches - 1.0) / batches);
  return out;
}

}  // namespace xpair
