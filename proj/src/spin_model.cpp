#include "xpair/spin_model.hpp"

#include <bit>
#include <cmath>

#include "xpair/errors.hpp"

namespace xpair {

bool is_spin_config(const SpinConfig& sigma) {
  return (sigma.array().abs() == 1.0).all();
}

QuadraticModel::QuadraticModel(Eigen::MatrixXd J, Eigen::VectorXd h, double beta_in)
    : coupling(std::move(J)), field(std::move(h)), beta(beta_in) {
  if (coupling.rows() != coupling.cols() || coupling.rows() != field.size())
    throw config_error("QuadraticModel: dimension mismatch");
  if (!(beta >= 0.0)) throw config_error("QuadraticModel: beta must be >= 0");
  if (coupling.diagonal().cwiseAbs().maxCoeff() != 0.0)
    throw config_error("QuadraticModel: coupling diagonal must be zero");
  if (!coupling.isApprox(coupling.transpose(), 0.0))
    throw config_error("QuadraticModel: coupling must be symmetric");
}

QuadraticModel curie_weiss_model(int n, double beta, double h) {
  if (n < 1) throw config_error("curie_weiss_model: n must be >= 1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  J.diagonal().setZero();
  return QuadraticModel(std::move(J), Eigen::VectorXd::Constant(n, h), beta);
}

double hamiltonian(const QuadraticModel& model, const SpinConfig& sigma) {
  if (sigma.size() != model.field.size())
    throw config_error("hamiltonian: dimension mismatch");
  // sum_{i<j} J_ij s_i s_j = (1/2) s^T J s since diag(J) = 0
  const double pair_term = 0.5 * sigma.dot(model.coupling * sigma);
  return -pair_term - model.field.dot(sigma);
}

double local_field(const QuadraticModel& model, const SpinConfig& sigma, int site) {
  if (site < 0 || site >= model.size())
    throw config_error("local_field: site out of range");
  return model.coupling.row(site).dot(sigma) + model.field[site];
}

Eigen::VectorXd local_fields(const QuadraticModel& model, const SpinConfig& sigma) {
  return model.coupling * sigma + model.field;
}

double conditional_plus_probability(double beta, double m) {
  return 1.0 / (1.0 + std::exp(-2.0 * beta * m));
}

DiscreteDistribution conditional_spin_distribution(const QuadraticModel& model,
                                                   const SpinConfig& sigma, int site) {
  const double p = conditional_plus_probability(model.beta, local_field(model, sigma, site));
  return two_point_distribution(p);
}

double magnetization(const SpinConfig& sigma) {
  if (sigma.size() == 0) throw config_error("magnetization: empty configuration");
  return sigma.mean();
}

SpinConfig ExactGibbs::state(std::uint64_t index) const { return decode_state(index, n); }

SpinConfig decode_state(std::uint64_t state, int n) {
  SpinConfig sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = spin_at(state, i);
  return sigma;
}

std::uint64_t encode_state(const SpinConfig& sigma) {
  std::uint64_t s = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma[i] > 0.0) s |= std::uint64_t{1} << i;
  return s;
}

ExactGibbs enumerate_gibbs(const QuadraticModel& model, int cap) {
  const int n = model.size();
  if (n > cap) throw config_error("enumerate_gibbs: n exceeds enumeration cap");
  if (n > 30) throw config_error("enumerate_gibbs: n too large");
  const std::uint64_t count = std::uint64_t{1} << n;

  ExactGibbs gibbs;
  gibbs.n = n;
  gibbs.energies.resize(count);

  // Walk states in Gray-code order so each step flips one spin and the
  // energy update is O(n).
  SpinConfig sigma = SpinConfig::Constant(n, -1.0);
  double energy = hamiltonian(model, sigma);
  gibbs.energies[0] = energy;
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < count; ++i) {
    const int bit = std::countr_zero(i);
    const double m = model.coupling.row(bit).dot(sigma) + model.field[bit];
    energy += 2.0 * sigma[bit] * m;
    sigma[bit] = -sigma[bit];
    gray ^= std::uint64_t{1} << bit;
    gibbs.energies[gray] = energy;
  }

  // Normalize in log space with a max shift so large beta cannot overflow.
  const Eigen::VectorXd neg = -model.beta * gibbs.energies;
  const double shift = neg.maxCoeff();
  gibbs.probs = (neg.array() - shift).exp();
  gibbs.probs /= gibbs.probs.sum();
  return gibbs;
}

double exact_expectation(const ExactGibbs& gibbs,
                         const std::function<double(const SpinConfig&)>& g) {
  double acc = 0.0;
  for (std::uint64_t s = 0; s < gibbs.size(); ++s)
    acc += gibbs.probs[s] * g(gibbs.state(s));
  return acc;
}

std::vector<double> tabulate(const ExactGibbs& gibbs,
                             const std::function<double(const SpinConfig&)>& g) {
  std::vector<double> values(gibbs.size());
  for (std::uint64_t s = 0; s < gibbs.size(); ++s) values[s] = g(gibbs.state(s));
  return values;
}

std::vector<SpinTransition> gibbs_transitions(const QuadraticModel& model,
                                              std::uint64_t state) {
  const int n = model.size();
  const SpinConfig sigma = decode_state(state, n);
  const Eigen::VectorXd m = local_fields(model, sigma);
  std::vector<SpinTransition> out;
  out.reserve(n + 1);
  double stay = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p_plus = conditional_plus_probability(model.beta, m[i]);
    const double p_keep = sigma[i] > 0.0 ? p_plus : 1.0 - p_plus;
    stay += p_keep / n;
    out.push_back({flip_site(state, i), (1.0 - p_keep) / n});
  }
  out.push_back({state, stay});
  return out;
}

}  // namespace xpair
