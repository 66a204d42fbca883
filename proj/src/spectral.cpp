#include "xpair/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "xpair/errors.hpp"
#include "xpair/harness.hpp"

namespace xpair {

using Complex = std::complex<double>;

bool is_hermitian(const MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.norm());
}

bool is_unitary(const MatrixXcd& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const MatrixXcd delta = u * u.adjoint() - MatrixXcd::Identity(u.rows(), u.cols());
  return delta.cwiseAbs().maxCoeff() <= tol;
}

namespace {

double off_diagonal_norm(const MatrixXcd& m) {
  double acc = 0.0;
  for (Eigen::Index p = 0; p < m.rows(); ++p)
    for (Eigen::Index q = 0; q < m.cols(); ++q)
      if (p != q) acc += std::norm(m(p, q));
  return std::sqrt(acc);
}

// One two-sided unitary rotation zeroing a(p,q).  The rotation is the
// phase transform that makes a(p,q) real followed by the classical
// symmetric Jacobi rotation.
void apply_rotation(MatrixXcd& a, MatrixXcd* vectors, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // columns: col_p' = c*phase*col_p - s*col_q ; col_q' = s*phase*col_p + c*col_q
  const Complex cp = c * phase, sp = s * phase;
  const Complex cpc = std::conj(cp), spc = std::conj(sp);
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p), akq = a(k, q);
    a(k, p) = cp * akp - s * akq;
    a(k, q) = sp * akp + c * akq;
  }
  // rows (conjugate transpose of the column action)
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k), aqk = a(q, k);
    a(p, k) = cpc * apk - s * aqk;
    a(q, k) = spc * apk + c * aqk;
  }
  a(p, q) = Complex(0.0, 0.0);
  a(q, p) = Complex(0.0, 0.0);
  a(p, p) = Complex(a(p, p).real(), 0.0);
  a(q, q) = Complex(a(q, q).real(), 0.0);

  if (vectors) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex vkp = (*vectors)(k, p), vkq = (*vectors)(k, q);
      (*vectors)(k, p) = cp * vkp - s * vkq;
      (*vectors)(k, q) = sp * vkp + c * vkq;
    }
  }
}

HermitianEigen jacobi_eigen(const MatrixXcd& m, bool want_vectors) {
  if (m.rows() != m.cols()) throw config_error("hermitian_eigenvalues: not square");
  if (!is_hermitian(m, 1e-12))
    throw config_error("hermitian_eigenvalues: matrix is not hermitian");
  const Eigen::Index n = m.rows();
  MatrixXcd a = m;
  MatrixXcd vectors;
  if (want_vectors) vectors = MatrixXcd::Identity(n, n);
  const double target = 1e-11 * std::max(m.norm(), 1e-300);

  bool converged = off_diagonal_norm(a) <= target;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q)
        apply_rotation(a, want_vectors ? &vectors : nullptr, p, q);
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged)
    throw numerical_error("hermitian_eigenvalues: Jacobi did not converge in 60 sweeps");

  HermitianEigen out;
  out.eigenvalues = a.diagonal().real();
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return out.eigenvalues[i] < out.eigenvalues[j];
  });
  VectorXd sorted(n);
  for (Eigen::Index i = 0; i < n; ++i) sorted[i] = out.eigenvalues[order[i]];
  out.eigenvalues = std::move(sorted);
  if (want_vectors) {
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) out.vectors.col(i) = vectors.col(order[i]);
  }
  return out;
}

}  // namespace

VectorXd hermitian_eigenvalues(const MatrixXcd& m) {
  return jacobi_eigen(m, false).eigenvalues;
}

HermitianEigen hermitian_eigendecomposition(const MatrixXcd& m) {
  return jacobi_eigen(m, true);
}

double SpectralCDF::operator()(double x) const {
  const double* begin = eigenvalues.data();
  const double* end = begin + eigenvalues.size();
  return static_cast<double>(std::upper_bound(begin, end, x) - begin) /
         static_cast<double>(eigenvalues.size());
}

SpectralCDF spectral_cdf(const MatrixXcd& m) { return {hermitian_eigenvalues(m)}; }

double empirical_cdf(const MatrixXcd& m, double x) { return spectral_cdf(m)(x); }

double cdf_sup_distance(const VectorXd& a, const VectorXd& b) {
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  Eigen::Index i = 0, j = 0;
  double sup = 0.0;
  while (i < a.size() || j < b.size()) {
    double x;
    if (j == b.size())
      x = a[i];
    else if (i == a.size())
      x = b[j];
    else
      x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    sup = std::max(sup, std::abs(i / na - j / nb));
  }
  return sup;
}

RankDistanceCheck rank_distance_check(const MatrixXcd& m, const MatrixXcd& n) {
  if (m.rows() != n.rows() || m.cols() != n.cols())
    throw config_error("rank_distance_check: dimension mismatch");
  RankDistanceCheck out;
  const Eigen::Index dim = m.rows();
  out.sup_diff = cdf_sup_distance(hermitian_eigenvalues(m), hermitian_eigenvalues(n));
  const MatrixXcd diff = m - n;
  const double scale = diff.norm();
  if (scale > 0.0) {
    Eigen::JacobiSVD<MatrixXcd> svd(diff);
    const auto& sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > 1e-9 * scale) ++out.rank;
  }
  out.rank_over_n = static_cast<double>(out.rank) / static_cast<double>(dim);
  out.pass = out.sup_diff <= out.rank_over_n + 1e-9;
  return out;
}

MatrixXcd haar_unitary(int n, RngStream& rng) {
  if (n < 1) throw config_error("haar_unitary: need n >= 1");
  MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ();
  const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag == 0.0 ? Complex(1.0, 0.0) : d / mag;
  }
  return q;
}

double sample_reflection_angle(int n, RngStream& rng) {
  // rejection from the uniform proposal; the density peaks at phi = pi
  // where sin(phi/2) = 1, so the envelope constant is 1
  for (long attempt = 0; attempt < 1000000; ++attempt) {
    const double phi = 2.0 * M_PI * rng.next_double();
    const double accept = std::pow(std::sin(0.5 * phi), n - 1);
    if (rng.next_double() < accept) return phi;
  }
  throw numerical_error("sample_reflection_angle: rejection sampler stalled");
}

MatrixXcd reflection_matrix(int n, const Eigen::VectorXcd& u, double phi) {
  const Complex delta = Complex(1.0, 0.0) - std::polar(1.0, phi);
  return MatrixXcd::Identity(n, n) - delta * (u * u.adjoint());
}

MatrixXcd reflection_sample(int n, RngStream& rng) {
  if (n < 2) throw config_error("reflection_sample: need n >= 2");
  Eigen::VectorXcd u(n);
  for (int i = 0; i < n; ++i) u[i] = Complex(rng.next_gaussian(), rng.next_gaussian());
  u /= u.norm();
  return reflection_matrix(n, u, sample_reflection_angle(n, rng));
}

MatrixXcd reflection_walk(int n, long k, RngStream& rng) {
  if (k < 0) throw config_error("reflection_walk: need k >= 0");
  MatrixXcd product = MatrixXcd::Identity(n, n);
  for (long step = 0; step < k; ++step) product = reflection_sample(n, rng) * product;
  return product;
}

MatrixXcd sum_conjugated(const VectorXd& d1, const VectorXd& d2, const MatrixXcd& u,
                         const MatrixXcd& v) {
  if (u.rows() != d1.size() || v.rows() != d2.size() || u.rows() != v.rows())
    throw config_error("sum_conjugated: dimension mismatch");
  MatrixXcd h = u * d1.asDiagonal() * u.adjoint() + v * d2.asDiagonal() * v.adjoint();
  return 0.5 * (h + h.adjoint());  // float roundoff symmetrization
}

VarianceEstimate fh_variance_mc(const VectorXd& d1, const VectorXd& d2, double x,
                                long reps, RngStream& rng) {
  if (reps < 2) throw config_error("fh_variance_mc: need reps >= 2");
  std::vector<double> values(reps);
  parallel_jobs(static_cast<int>(reps), [&](int r) {
    RngStream stream = rng.substream(r);
    const MatrixXcd u = haar_unitary(static_cast<int>(d1.size()), stream);
    const MatrixXcd v = haar_unitary(static_cast<int>(d2.size()), stream);
    values[r] = empirical_cdf(sum_conjugated(d1, d2, u, v), x);
  });
  VarianceEstimate out;
  out.reps = reps;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= reps;
  out.mean = mean;
  double m2 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  out.variance = m2 / (reps - 1.0);
  m2 /= reps;
  m4 /= reps;
  out.std_error = std::sqrt(std::max(m4 - m2 * m2, 0.0) / reps);
  return out;
}

}  // namespace xpair
