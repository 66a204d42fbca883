#include "xpair/permstats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "xpair/errors.hpp"

namespace xpair {

double hoeffding_statistic(const Eigen::MatrixXd& a, const Permutation& pi) {
  if (a.rows() != a.cols() || a.rows() != static_cast<Eigen::Index>(pi.size()))
    throw config_error("hoeffding_statistic: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i)
    acc += a(static_cast<Eigen::Index>(i), pi[i]);
  return acc;
}

int fixed_points(const Permutation& pi) {
  int count = 0;
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi[i] == static_cast<int>(i)) ++count;
  return count;
}

long footrule(const Permutation& pi, const Permutation& sigma) {
  if (pi.size() != sigma.size()) throw config_error("footrule: size mismatch");
  long acc = 0;
  for (std::size_t i = 0; i < pi.size(); ++i) acc += std::abs(pi[i] - sigma[i]);
  return acc;
}

int descent_count(const Permutation& pi) {
  int count = 0;
  for (std::size_t i = 0; i + 1 < pi.size(); ++i)
    if (pi[i] > pi[i + 1]) ++count;
  return count;
}

Permutation compose(const Permutation& f, const Permutation& g) {
  if (f.size() != g.size()) throw config_error("compose: size mismatch");
  Permutation out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
  return out;
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& fn) {
  if (n < 0 || n > 8) throw config_error("for_each_permutation: n capped at 8");
  Permutation pi = identity_permutation(n);
  do {
    fn(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));
}

Eigen::MatrixXd footrule_array(int n) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = std::abs(i - j) / static_cast<double>(n);
  return a;
}

}  // namespace xpair
