#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "xpair/graph.hpp"
#include "xpair/rng.hpp"
#include "xpair/spin_model.hpp"

namespace xpair {

// Nonnegative matrix with zero diagonal bounding the total-variation
// sensitivity of single-site conditionals to single-coordinate changes.
struct InterdependenceMatrix {
  Eigen::MatrixXd a;
  std::string provenance;
};

// a_ij = 4 beta |J_ij| for the Gibbs density exp(-beta H) of a
// quadratic Hamiltonian (the mixed partial of beta*H is -beta*J_ij).
InterdependenceMatrix quadratic_interdependence(const QuadraticModel& model);

// a_ij = 1/(k - r) on edges for uniform proper k-colorings, r = max degree.
InterdependenceMatrix coloring_interdependence(const GraphAdj& g, int k);

struct InterdependenceReport {
  bool passed = true;
  long checks = 0;
  double worst_slack = 0.0;  // min over checks of a_ij - d_TV (null checks require 0)
  double max_ratio = 0.0;    // max d_TV / a_ij over entries with a_ij > 0
  // witness of the worst (or violating) check
  std::uint64_t witness_state = 0;
  int witness_changed_site = -1;
  int witness_site = -1;
  double witness_tv = 0.0;
  double witness_entry = 0.0;
};

// Exhaustive check over all states and single-coordinate flips.
InterdependenceReport verify_interdependence(const QuadraticModel& model,
                                             const InterdependenceMatrix& A);
// Sampled check for spaces too large to enumerate.
InterdependenceReport verify_interdependence(const QuadraticModel& model,
                                             const InterdependenceMatrix& A,
                                             long sample_budget, RngStream& rng);
// Exhaustive over all colorings in {1..k}^n (the conditional law is
// defined for every boundary when k > max degree).
InterdependenceReport verify_interdependence_coloring(const GraphAdj& g, int k,
                                                      const InterdependenceMatrix& A);

}  // namespace xpair
