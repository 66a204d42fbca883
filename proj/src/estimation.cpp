#include "xpair/estimation.hpp"

#include <cmath>

#include "xpair/errors.hpp"

namespace xpair {

IsingSample::IsingSample(GraphAdj g, SpinConfig x_in)
    : graph(std::move(g)), x(std::move(x_in)) {
  if (x.size() != graph.n) throw config_error("IsingSample: dimension mismatch");
}

double neighbor_sum(const GraphAdj& g, const SpinConfig& x, int site) {
  double s = 0.0;
  for (int v : g.adj[site]) s += x[v];
  return s;
}

double conditional_ls_objective(const IsingSample& sample, double theta) {
  if (!(theta >= 0.0)) throw config_error("conditional_ls_objective: theta must be >= 0");
  const int n = sample.size();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = sample.x[i] - std::tanh(theta * neighbor_sum(sample.graph, sample.x, i));
    acc += r * r;
  }
  return acc / n;
}

ABDecomposition decompose_AB(const IsingSample& sample, double psi, double theta) {
  const int n = sample.size();
  double a = 0.0, b = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = neighbor_sum(sample.graph, sample.x, i);
    const double mu_theta = std::tanh(theta * s);
    const double diff = mu_theta - std::tanh(psi * s);
    a += diff * diff;
    b += diff * (sample.x[i] - mu_theta);
  }
  return {a / n, 2.0 * b / n};
}

TailBound lslmm_tail(double M, int n) {
  if (!(M >= 0.0) || n < 1) throw config_error("lslmm_tail: invalid parameters");
  const double rate = n / (96.0 * M + 32.0);
  return {"conditional-least-squares",
          {{"M", M}, {"n", double(n)}},
          [rate](double t) { return 2.0 * std::exp(-rate * t * t); }};
}

long covering_number_ising(double epsilon, int r) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw config_error("covering_number_ising: epsilon must lie in (0,1)");
  return static_cast<long>(std::ceil(r * std::abs(std::log(epsilon)) / (2.0 * epsilon) + 2.0));
}

ConfidenceRegion confidence_region(const IsingSample& sample,
                                   const std::vector<double>& grid, double alpha) {
  if (grid.empty()) throw config_error("confidence_region: empty grid");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw config_error("confidence_region: alpha must lie in (0,1)");
  const int n = sample.size();
  const int r = sample.graph.max_degree;
  ConfidenceRegion out;
  out.level = 1.0 - alpha;
  out.epsilon = std::sqrt(static_cast<double>(std::max(r, 1)) / n);
  out.covering = covering_number_ising(out.epsilon, std::max(r, 1));
  const double M = 2.0 * r;
  // solve 2 Nd exp(-n t^2/(96M+32)) = alpha; zero when already below alpha
  const double pref = 2.0 * static_cast<double>(out.covering);
  out.t_alpha = pref <= alpha
                    ? 0.0
                    : std::sqrt((96.0 * M + 32.0) * std::log(pref / alpha) / n);
  out.threshold = 4.0 * out.epsilon + out.t_alpha;

  const GridMinimum gm = grid_minimize_S(sample, grid);
  out.s_min = gm.value;
  for (double theta : grid)
    if (conditional_ls_objective(sample, theta) - gm.value <= out.threshold)
      out.retained.push_back(theta);
  return out;
}

GridMinimum grid_minimize_S(const IsingSample& sample, const std::vector<double>& grid) {
  if (grid.empty()) throw config_error("grid_minimize_S: empty grid");
  GridMinimum best{grid.front(), conditional_ls_objective(sample, grid.front())};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double value = conditional_ls_objective(sample, grid[i]);
    if (value < best.value || (value == best.value && grid[i] < best.theta))
      best = {grid[i], value};
  }
  return best;
}

}  // namespace xpair
