#include "xpair/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xpair/errors.hpp"
#include "xpair/rng.hpp"

namespace xpair {

double TailBound::constant(const std::string& key) const {
  for (const auto& [k, v] : constants)
    if (k == key) return v;
  throw config_error("TailBound: unknown constant " + key);
}

MatrixNorms matrix_norms(const Eigen::MatrixXd& a, double rel_tol, int max_iterations) {
  if (a.rows() != a.cols()) throw config_error("matrix_norms: matrix must be square");
  if (!a.allFinite()) throw config_error("matrix_norms: non-finite entries");
  MatrixNorms out;
  const Eigen::Index n = a.rows();
  if (n == 0) return out;
  out.norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  out.norm_inf = a.cwiseAbs().rowwise().sum().maxCoeff();
  out.hilbert_schmidt = a.norm();
  if (out.hilbert_schmidt == 0.0) return out;

  // power iteration on A^T A; all-ones start, one seeded random restart
  // if the iterate lands in the kernel
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  double lambda = 0.0;
  bool restarted = false;
  out.norm2_converged = false;
  for (int it = 1; it <= max_iterations; ++it) {
    out.iterations = it;
    const Eigen::VectorXd u = a * v;
    const double rayleigh = u.squaredNorm();  // v^T A^T A v for unit v
    if (it > 1 && std::abs(rayleigh - lambda) <= rel_tol * std::max(rayleigh, 1e-300)) {
      lambda = rayleigh;
      out.norm2_converged = true;
      break;
    }
    lambda = rayleigh;
    const Eigen::VectorXd w = a.transpose() * u;
    const double norm_w = w.norm();
    if (norm_w == 0.0) {
      if (restarted) break;  // report best iterate
      restarted = true;
      RngStream rng(0x9E37);
      for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.next_gaussian();
      v.normalize();
      continue;
    }
    v = w / norm_w;
  }
  out.norm2 = std::sqrt(std::max(lambda, 0.0));
  return out;
}

double operator_norm2(const Eigen::MatrixXd& a) { return matrix_norms(a).norm2; }

TailBound hoeffding_tail(double C) {
  if (!(C > 0.0)) throw config_error("hoeffding_tail: C must be positive");
  return {"hoeffding",
          {{"C", C}},
          [C](double t) { return 2.0 * std::exp(-t * t / (2.0 * C)); }};
}

TailBound self_bounded_tail(double B, double C) {
  if (!(B > 0.0) || !(C > 0.0))
    throw config_error("self_bounded_tail: B and C must be positive");
  return {"self-bounded",
          {{"B", B}, {"C", C}},
          [B, C](double t) { return 2.0 * std::exp(-t * t / (2.0 * C + 2.0 * B * t)); }};
}

TailBound refined_tail(double C, double eps) {
  if (!(C > 0.0) || !(eps > 0.0))
    throw config_error("refined_tail: C and eps must be positive");
  return {"refined",
          {{"C", C}, {"eps", eps}},
          [C, eps](double t) {
            return 2.0 * std::exp(-C * t * t / (2.0 * C * C + 8.0 * eps * t));
          }};
}

TailBound unbounded_tail(double rL, double L) {
  if (!(rL >= 0.0) || !(L > 0.0)) throw config_error("unbounded_tail: need rL >= 0, L > 0");
  const double root_l = std::sqrt(L);
  return {"unbounded-surrogate",
          {{"rL", rL}, {"L", L}},
          [rL, root_l](double t) {
            return 2.0 * std::exp(-t * t / (2.0 * rL + 4.0 * t / root_l));
          }};
}

double r_of_L_exact(const ExactGibbs& gibbs, const std::vector<double>& v_values,
                    double L) {
  if (!(L > 0.0)) throw config_error("r_of_L: L must be positive");
  if (v_values.size() != gibbs.size()) throw config_error("r_of_L: table size mismatch");
  const double shift = *std::max_element(v_values.begin(), v_values.end());
  double acc = 0.0;
  for (std::uint64_t s = 0; s < gibbs.size(); ++s)
    acc += gibbs.probs[s] * std::exp(L * (v_values[s] - shift));
  return shift + std::log(acc) / L;
}

RofLEstimate r_of_L_mc(const std::vector<double>& v_samples, double L) {
  if (!(L > 0.0)) throw config_error("r_of_L: L must be positive");
  if (v_samples.empty()) throw config_error("r_of_L: no samples");
  const double shift = *std::max_element(v_samples.begin(), v_samples.end());
  const double m = static_cast<double>(v_samples.size());
  double sum = 0.0, sumsq = 0.0;
  for (double v : v_samples) {
    const double e = std::exp(L * (v - shift));
    sum += e;
    sumsq += e * e;
  }
  RofLEstimate out;
  const double mean = sum / m;
  out.value = shift + std::log(mean) / L;
  out.degenerate = mean <= 1.5 / m;  // essentially all weight on the shift point
  const double var = std::max(0.0, (sumsq - m * mean * mean) / (m - 1.0));
  out.std_error = std::sqrt(var / m) / (mean * L);  // delta method through log
  return out;
}

double moment_bound(int p, double v_norm_p) {
  if (p < 1) throw config_error("moment_bound: p must be >= 1");
  return (2.0 * p - 1.0) * v_norm_p;
}

TailBound dobrushin_tail(const Eigen::MatrixXd& A, const Eigen::VectorXd& c) {
  if (A.rows() != A.cols() || A.rows() != c.size())
    throw config_error("dobrushin_tail: dimension mismatch");
  if ((A.array() < 0.0).any() || (c.array() < 0.0).any())
    throw config_error("dobrushin_tail: entries must be nonnegative");
  if (A.diagonal().cwiseAbs().maxCoeff() != 0.0)
    throw config_error("dobrushin_tail: diagonal must be zero");
  const double norm2 = operator_norm2(A);
  if (norm2 >= 1.0)
    throw config_error("dobrushin_tail: ||A||_2 >= 1, bound inapplicable");
  const double csq = c.squaredNorm();
  if (csq == 0.0) throw config_error("dobrushin_tail: c is identically zero");
  const double rate = (1.0 - norm2) / csq;
  return {"dobrushin",
          {{"norm2", norm2}, {"sum_c_sq", csq}},
          [rate](double t) { return 2.0 * std::exp(-rate * t * t); }};
}

CurieWeissBounds curie_weiss_bounds(int n, double beta) {
  if (n < 1) throw config_error("curie_weiss_bounds: n must be >= 1");
  if (!(beta >= 0.0)) throw config_error("curie_weiss_bounds: beta must be >= 0");
  CurieWeissBounds out{(2.0 + 2.0 * beta) / n + beta * beta / (double(n) * n),
                       beta / n,
                       {"curie-weiss",
                        {{"n", double(n)}, {"beta", beta}},
                        [n, beta](double t) {
                          return 2.0 * std::exp(-n * t * t / (4.0 + 4.0 * beta));
                        }}};
  return out;
}

MeanFieldBounds mean_field_bounds(const Eigen::MatrixXd& J, const Eigen::VectorXd& h,
                                  double beta) {
  if (J.rows() != J.cols() || J.rows() != h.size())
    throw config_error("mean_field_bounds: dimension mismatch");
  if (!(beta >= 0.0)) throw config_error("mean_field_bounds: beta must be >= 0");
  const int n = static_cast<int>(h.size());
  MeanFieldBounds out;
  out.rho = J.norm();
  const double amp = 1.0 + beta * out.rho;
  const Eigen::VectorXd row_sq = J.array().square().rowwise().sum();
  out.site_second_moment = 2.0 * beta * beta * amp * row_sq;
  out.averaged_second_moment = 2.0 * amp * beta * beta * out.rho * out.rho / n;
  out.site_tail_denominator = 4.0 * beta * beta * amp * row_sq;
  out.high_temp_applicable = beta * out.rho < 1.0;
  out.high_temp_bound =
      out.high_temp_applicable
          ? out.averaged_second_moment / ((1.0 - beta * out.rho) * (1.0 - beta * out.rho))
          : std::numeric_limits<double>::quiet_NaN();
  return out;
}

TailBound MeanFieldBounds::site_tail(int i) const {
  const double denom = site_tail_denominator[i];
  return {"mean-field-site",
          {{"site", double(i)}, {"denominator", denom}},
          [denom](double t) {
            if (denom == 0.0) return t > 0.0 ? 0.0 : 2.0;
            return 2.0 * std::exp(-t * t / denom);
          }};
}

Eigen::VectorXd mean_field_fixed_point(const Eigen::MatrixXd& J,
                                       const Eigen::VectorXd& h, double beta,
                                       double tol) {
  const double rho = J.norm();
  if (!(beta * rho < 1.0))
    throw config_error("mean_field_fixed_point: beta * ||J||_HS must be < 1");
  Eigen::VectorXd x = h;
  for (long it = 0; it < 100000; ++it) {
    Eigen::VectorXd next = J * (beta * x).array().tanh().matrix() + h;
    const double change = (next - x).norm();
    x.swap(next);
    if (change < tol) return x;
  }
  throw numerical_error("mean_field_fixed_point: no convergence");
}

SkBounds sk_bounds(const Eigen::VectorXd& alpha, double beta, double normJ,
                   double normJ2) {
  if (!(beta >= 0.0) || !(normJ >= 0.0) || !(normJ2 >= 0.0))
    throw config_error("sk_bounds: invalid parameters");
  const double K = beta * normJ + beta * beta * normJ2;
  const double asq = alpha.squaredNorm();
  const double amax = alpha.cwiseAbs().maxCoeff();
  SkBounds out{2.0 * (1.0 + K) * asq, 4.0 * amax * (1.0 + K * K) * asq,
               refined_tail(2.0 * (1.0 + K) * asq, 4.0 * amax * (1.0 + K * K) * asq)};
  out.tail.name = "sk-refined";
  out.tail.constants.emplace_back("K", K);
  return out;
}

GroupTailConstant group_tail_constant(double a, double b, double A, double B) {
  if (!(a > 0.0 && b > 0.0 && A > 0.0 && B > 0.0))
    throw config_error("group_tail_constant: parameters must be positive");
  const double log_plus = std::max(std::log(4.0 * a * A / B), 0.0);
  const double geometric = b * (2.0 - std::exp(-b)) / (1.0 - std::exp(-b));
  const double C = B * B / (2.0 * b) * (log_plus + geometric);
  GroupTailConstant out{C, C, hoeffding_tail(C)};
  out.tail.name = "group-action";
  out.tail.constants = {{"C", C}, {"a", a}, {"b", b}, {"A", A}, {"B", B}};
  return out;
}

GroupTailConstant symmetric_group_tail(int n, double A, double B) {
  if (n < 2) throw config_error("symmetric_group_tail: need n >= 2");
  return group_tail_constant(6.0 * n, 2.0 / n, A, B);
}

GroupTailConstant unitary_group_tail(int n, double A, double B, double alpha,
                                     double beta_rate) {
  if (n < 2) throw config_error("unitary_group_tail: need n >= 2");
  return group_tail_constant(alpha * std::pow(double(n), beta_rate / 2.0),
                             beta_rate / n, A, B);
}

TailBound perm_statistic_tail(double meanX) {
  if (!(meanX > 0.0)) throw config_error("perm_statistic_tail: mean must be positive");
  return {"permutation-statistic",
          {{"meanX", meanX}},
          [meanX](double t) {
            return 2.0 * std::exp(-t * t / (4.0 * meanX + 2.0 * t));
          }};
}

FootruleMoments footrule_moments(int n) {
  if (n < 2) throw config_error("footrule_moments: need n >= 2");
  const double nd = n;
  return {(nd * nd - 1.0) / 3.0, (nd + 1.0) * (2.0 * nd * nd + 7.0) / 45.0};
}

TailBound footrule_tail(int n) {
  if (n < 2) throw config_error("footrule_tail: need n >= 2");
  const double nd = n;
  const double base = 2.0 + 7.0 / (nd * nd);
  const double alpha_n = 60.0 * (nd - 1.0) / (nd * base);
  const double beta_n = 2.0 * std::sqrt(45.0) / std::sqrt((nd + 1.0) * base);
  return {"footrule",
          {{"alpha_n", alpha_n}, {"beta_n", beta_n}},
          [alpha_n, beta_n](double t) {
            return 2.0 * std::exp(-t * t / (alpha_n + beta_n * t));
          }};
}

LseBounds lse_bounds(double epsilon, double M, int n, long Nd) {
  if (!(epsilon > 0.0) || !(M >= 0.0) || n < 1 || Nd < 1)
    throw config_error("lse_bounds: invalid parameters");
  const double rate = n / (96.0 * M + 32.0);
  const double prefactor = 2.0 * static_cast<double>(Nd);
  LseBounds out;
  out.tail = {"least-squares",
              {{"Nd", double(Nd)}, {"M", M}, {"n", double(n)}, {"epsilon", epsilon}},
              [prefactor, rate](double t) { return prefactor * std::exp(-rate * t * t); }};
  out.offset = 4.0 * epsilon;
  out.expectation_bound =
      4.0 * epsilon + 2.0 * std::sqrt((96.0 * M + 32.0) * std::log(prefactor) / n);
  return out;
}

}  // namespace xpair
