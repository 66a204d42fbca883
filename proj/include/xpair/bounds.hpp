#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "xpair/spin_model.hpp"

namespace xpair {

// Named tail bound t -> probability bound.  Values are returned as
// computed, even when above 1; callers flag vacuous ranges.
struct TailBound {
  std::string name;
  std::vector<std::pair<std::string, double>> constants;
  std::function<double(double)> eval;

  double operator()(double t) const { return eval(t); }
  double constant(const std::string& key) const;
};

struct MatrixNorms {
  double norm1 = 0.0;            // max column abs sum
  double norm_inf = 0.0;         // max row abs sum
  double norm2 = 0.0;            // L2 operator norm (power iteration on A^T A)
  double hilbert_schmidt = 0.0;  // Frobenius
  bool norm2_converged = true;
  int iterations = 0;
};

MatrixNorms matrix_norms(const Eigen::MatrixXd& a, double rel_tol = 1e-10,
                         int max_iterations = 10000);
double operator_norm2(const Eigen::MatrixXd& a);

// |v(X)| <= C:  2 exp(-t^2 / (2C))
TailBound hoeffding_tail(double C);

// v(x) <= B f(x) + C:  2 exp(-t^2 / (2C + 2Bt))
TailBound self_bounded_tail(double B, double C);

// |v1(X)| <= C, v2(X) <= eps:  2 exp(-C t^2 / (2C^2 + 8 eps t))
TailBound refined_tail(double C, double eps);

// r(L) surrogate for an unbounded v:  2 exp(-t^2 / (2 r(L) + 4 t / sqrt(L)))
TailBound unbounded_tail(double rL, double L);

// r(L) = L^{-1} log E exp(L v(X)), exactly over an enumerated measure.
double r_of_L_exact(const ExactGibbs& gibbs, const std::vector<double>& v_values,
                    double L);
struct RofLEstimate {
  double value = 0.0;
  double std_error = 0.0;
  bool degenerate = false;  // all weight at the max-shift point
};
RofLEstimate r_of_L_mc(const std::vector<double>& v_samples, double L);

// ||f(X)||_{2p}^2 <= (2p-1) ||v(X)||_p
double moment_bound(int p, double v_norm_p);

// Interdependence matrix A with ||A||_2 < 1 and Lipschitz vector c:
// 2 exp(-(1 - ||A||_2) t^2 / sum c_i^2).  Throws if ||A||_2 >= 1.
TailBound dobrushin_tail(const Eigen::MatrixXd& A, const Eigen::VectorXd& c);

struct CurieWeissBounds {
  double variance_bound;  // (2+2b)/n + b^2/n^2
  double offset;          // b/n
  TailBound tail;         // 2 exp(-n t^2 / (4+4b))
};
CurieWeissBounds curie_weiss_bounds(int n, double beta);

struct MeanFieldBounds {
  double rho;                            // ||J||_HS
  Eigen::VectorXd site_second_moment;    // 2 b^2 (1+b rho) sum_j J_ij^2
  double averaged_second_moment;         // 2 (1+b rho) b^2 rho^2 / n
  Eigen::VectorXd site_tail_denominator; // 4 b^2 (1+b rho) sum_j J_ij^2
  double high_temp_bound;                // 2 (1+b rho) b^2 rho^2 / (n (1-b rho)^2)
  bool high_temp_applicable;             // requires b rho < 1

  TailBound site_tail(int i) const;
};
MeanFieldBounds mean_field_bounds(const Eigen::MatrixXd& J, const Eigen::VectorXd& h,
                                  double beta);

// Unique fixed point of g_i(x) = sum_j J_ij tanh(beta x_j) + h_i when
// beta * ||J||_HS < 1.
Eigen::VectorXd mean_field_fixed_point(const Eigen::MatrixXd& J,
                                       const Eigen::VectorXd& h, double beta,
                                       double tol);

struct SkBounds {
  double C;
  double eps;
  TailBound tail;  // refined_tail(C, eps)
};
SkBounds sk_bounds(const Eigen::VectorXd& alpha, double beta, double normJ,
                   double normJ2);

struct GroupTailConstant {
  double C;
  double variance_bound;  // equals C
  TailBound tail;         // 2 exp(-t^2 / (2C))
};
// Walk with d_TV(Y_1...Y_k, X) <= a e^{-bk}; ||f||_inf <= A, ||f||_Y <= B.
GroupTailConstant group_tail_constant(double a, double b, double A, double B);
GroupTailConstant symmetric_group_tail(int n, double A, double B);    // a=6n, b=2/n
GroupTailConstant unitary_group_tail(int n, double A, double B,       // reflection walk
                                     double alpha, double beta_rate);

// X = sum a_{i pi(i)}, entries in [0,1]:  2 exp(-t^2 / (4 E X + 2t))
TailBound perm_statistic_tail(double meanX);

struct FootruleMoments {
  double mean;      // (n^2-1)/3
  double variance;  // (n+1)(2n^2+7)/45
};
FootruleMoments footrule_moments(int n);
// Standardized footrule tail 2 exp(-t^2/(alpha_n + beta_n t)).
TailBound footrule_tail(int n);

struct LseBounds {
  TailBound tail;           // t -> 2 Nd exp(-n t^2/(96M+32)), beyond the 4 eps offset
  double offset;            // 4 eps
  double expectation_bound; // 4 eps + 2 sqrt((96M+32) log(2 Nd) / n)
};
LseBounds lse_bounds(double epsilon, double M, int n, long Nd);

}  // namespace xpair
