#pragma once

#include <Eigen/Core>
#include <complex>

#include "xpair/rng.hpp"

namespace xpair {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

bool is_hermitian(const MatrixXcd& m, double tol = 1e-12);
bool is_unitary(const MatrixXcd& u, double tol = 1e-10);

// Eigenvalues of a hermitian matrix by cyclic complex Jacobi rotations,
// run until the off-diagonal Frobenius norm falls below 1e-11 * ||M||_F;
// throws numerical_error after 60 sweeps.  Sorted ascending.
VectorXd hermitian_eigenvalues(const MatrixXcd& m);

// Diagnostic mode: also accumulates the eigenvectors, so the backward
// error ||M - Q L Q*||_F can be checked.
struct HermitianEigen {
  VectorXd eigenvalues;  // ascending
  MatrixXcd vectors;     // columns ordered to match
};
HermitianEigen hermitian_eigendecomposition(const MatrixXcd& m);

// Step function x -> (number of eigenvalues <= x) / n.
struct SpectralCDF {
  VectorXd eigenvalues;  // sorted ascending
  double operator()(double x) const;
  int size() const { return static_cast<int>(eigenvalues.size()); }
};
SpectralCDF spectral_cdf(const MatrixXcd& m);

double empirical_cdf(const MatrixXcd& m, double x);

// sup_x |F_a - F_b| for two sorted spectra of equal length.
double cdf_sup_distance(const VectorXd& a, const VectorXd& b);

struct RankDistanceCheck {
  double sup_diff = 0.0;   // ||F_M - F_N||_inf
  int rank = 0;            // rank(M - N) by singular-value threshold
  double rank_over_n = 0.0;
  bool pass = false;       // sup_diff <= rank/n + 1e-9
};
RankDistanceCheck rank_distance_check(const MatrixXcd& m, const MatrixXcd& n);

// Haar-distributed unitary: QR of an iid complex-gaussian matrix with the
// column phases fixed so the triangular factor has a real positive diagonal.
MatrixXcd haar_unitary(int n, RngStream& rng);

// Y = I - (1 - e^{i phi}) u u*, u uniform on the complex unit sphere and
// phi drawn from the density proportional to sin(phi/2)^{n-1} on [0, 2pi).
MatrixXcd reflection_sample(int n, RngStream& rng);
double sample_reflection_angle(int n, RngStream& rng);
MatrixXcd reflection_matrix(int n, const Eigen::VectorXcd& u, double phi);

// Product of k independent reflection steps (k = 0 gives the identity).
MatrixXcd reflection_walk(int n, long k, RngStream& rng);

// H = U diag(d1) U* + V diag(d2) V*.
MatrixXcd sum_conjugated(const VectorXd& d1, const VectorXd& d2, const MatrixXcd& u,
                         const MatrixXcd& v);

struct VarianceEstimate {
  double variance = 0.0;
  double std_error = 0.0;  // normal-theory SE through the fourth moment
  long reps = 0;
  double mean = 0.0;
};
// Sample variance of F_H(x) over independent Haar pairs (U, V).
VarianceEstimate fh_variance_mc(const VectorXd& d1, const VectorXd& d2, double x,
                                long reps, RngStream& rng);

}  // namespace xpair
