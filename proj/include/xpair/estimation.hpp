#pragma once

#include <vector>

#include "xpair/bounds.hpp"
#include "xpair/graph.hpp"
#include "xpair/spin_model.hpp"

namespace xpair {

// One realization of the single-parameter Ising model on a graph:
// P_theta(x) proportional to exp(theta * sum_{(i,j) in E} x_i x_j),
// so E_theta(X_i | rest) = tanh(theta * sum_{j in N(i)} x_j).
struct IsingSample {
  GraphAdj graph;
  SpinConfig x;

  IsingSample(GraphAdj g, SpinConfig x_in);
  int size() const { return graph.n; }
};

double neighbor_sum(const GraphAdj& g, const SpinConfig& x, int site);

// Conditional least squares objective S(theta) =
// (1/n) sum_i (x_i - tanh(theta * neighbor_sum_i))^2.
double conditional_ls_objective(const IsingSample& sample, double theta);

// S(psi) - S(theta) = A + B with A >= 0 and B mean-zero under theta.
struct ABDecomposition {
  double A;
  double B;
};
ABDecomposition decompose_AB(const IsingSample& sample, double psi, double theta);

// 2 exp(-n t^2 / (96 M + 32))
TailBound lslmm_tail(double M, int n);

// Covering-number bound ceil(r |log eps| / (2 eps) + 2) for the
// conditional-mean metric on [0, infinity).
long covering_number_ising(double epsilon, int r);

struct ConfidenceRegion {
  std::vector<double> retained;  // grid points with S(theta) - min S <= threshold
  double level = 0.0;            // 1 - alpha
  double threshold = 0.0;        // 4 eps + t_alpha
  double t_alpha = 0.0;
  double epsilon = 0.0;
  long covering = 0;
  double s_min = 0.0;
};
ConfidenceRegion confidence_region(const IsingSample& sample,
                                   const std::vector<double>& grid, double alpha);

struct GridMinimum {
  double theta;
  double value;
};
// Exact grid minimizer, ties broken toward smaller theta.
GridMinimum grid_minimize_S(const IsingSample& sample, const std::vector<double>& grid);

}  // namespace xpair
