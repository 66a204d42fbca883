#pragma once

#include <Eigen/Core>
#include <functional>

#include "xpair/samplers.hpp"

namespace xpair {

// X = sum_i a(i, pi(i)) for an array with entries in [0,1].
double hoeffding_statistic(const Eigen::MatrixXd& a, const Permutation& pi);

int fixed_points(const Permutation& pi);

// Spearman's footrule sum_i |pi(i) - sigma(i)|.
long footrule(const Permutation& pi, const Permutation& sigma);

// Number of indices with pi(i) > pi(i+1).
int descent_count(const Permutation& pi);

// (f o g)(i) = f(g(i)).
Permutation compose(const Permutation& f, const Permutation& g);

// Visits all n! permutations in lexicographic order; capped at n = 8.
void for_each_permutation(int n, const std::function<void(const Permutation&)>& fn);

// a(i,j) = |i - j| / n, the normalized footrule array.
Eigen::MatrixXd footrule_array(int n);

}  // namespace xpair
