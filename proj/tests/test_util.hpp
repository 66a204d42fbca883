#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace test_util {

// Wilson-Hilferty approximation to the chi-square quantile at z sigmas.
inline double chisq_threshold(int df, double z) {
  const double a = 2.0 / (9.0 * df);
  const double c = 1.0 - a + z * std::sqrt(a);
  return df * c * c * c;
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double sup = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    sup = std::max(sup, std::abs(i / na - j / nb));
  }
  return sup;
}

// Critical value of the two-sample KS test at tail probability
// alpha = erfc(z/sqrt(2)) (i.e. a z-sigma two-sided level).
inline double ks_critical(std::size_t na, std::size_t nb, double z) {
  const double alpha = std::erfc(z / std::sqrt(2.0));
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt((na + nb) / (double(na) * double(nb)));
}

}  // namespace test_util
