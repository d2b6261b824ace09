#include "spcausal/estimands.hpp"

#include <cmath>
#include <stdexcept>

#include "spcausal/errors.hpp"

namespace spcausal {

namespace {

// Probability that k of d Bernoulli(pi) neighbors are treated.
double binomial_weight(int d, int k, double pi) {
  if (pi <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (pi >= 1.0) return k == d ? 1.0 : 0.0;
  const double log_choose =
      std::lgamma(d + 1.0) - std::lgamma(k + 1.0) - std::lgamma(d - k + 1.0);
  return std::exp(log_choose + k * std::log(pi) + (d - k) * std::log1p(-pi));
}

void check_policy(double pi, const char* what) {
  if (!(pi >= 0.0 && pi <= 1.0))
    throw std::invalid_argument(std::string(what) + ": policy probability outside [0,1]");
}

Eigen::VectorXd covariate_row(const Eigen::MatrixXd& c, int i) {
  if (c.cols() == 0) return Eigen::VectorXd(0);
  return c.row(i).transpose();
}

struct McMoments {
  double mean = 0.0;
  double variance = 0.0;  // across draws, not of the mean
};

// Mean of po_mean(z, Zbar_i) when each neighbor is treated independently with
// probability pi, by Monte Carlo over assignments.
McMoments mc_policy_mean(const ScenarioConfig& config, const AdjacencyStructure& adj,
                         const Eigen::MatrixXd& c, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& ubar, int i, double z, double pi, int n_draws,
                         SeededRng& rng) {
  const auto& nb = adj.neighbors()[i];
  if (nb.empty())
    throw IsolatedUnitError("network estimand: unit " + std::to_string(i + 1) +
                            " has no neighbors");
  std::bernoulli_distribution treat(pi);
  const Eigen::VectorXd ci = covariate_row(c, i);
  double acc = 0.0, acc2 = 0.0;
  for (int d = 0; d < n_draws; ++d) {
    int treated = 0;
    for (std::size_t j = 0; j < nb.size(); ++j)
      if (treat(rng.engine)) ++treated;
    const double zbar = static_cast<double>(treated) / static_cast<double>(nb.size());
    const double v = po_mean(config, z, zbar, ci, u(i), ubar(i));
    acc += v;
    acc2 += v * v;
  }
  McMoments m;
  m.mean = acc / n_draws;
  m.variance = n_draws > 1 ? std::max(0.0, (acc2 - n_draws * m.mean * m.mean) / (n_draws - 1.0))
                           : 0.0;
  return m;
}

// Same expectation, collapsed to a binomial sum over the treated count.
double exact_policy_mean(const ScenarioConfig& config, const AdjacencyStructure& adj,
                         const Eigen::MatrixXd& c, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& ubar, int i, double z, double pi) {
  const int d = static_cast<int>(adj.neighbors()[i].size());
  if (d == 0)
    throw IsolatedUnitError("network estimand: unit " + std::to_string(i + 1) +
                            " has no neighbors");
  const Eigen::VectorXd ci = covariate_row(c, i);
  double acc = 0.0;
  for (int k = 0; k <= d; ++k)
    acc += binomial_weight(d, k, pi) *
           po_mean(config, z, static_cast<double>(k) / d, ci, u(i), ubar(i));
  return acc;
}

}  // namespace

double po_mean(const ScenarioConfig& config, double z, double zbar, const Eigen::VectorXd& c,
               double u, double ubar) {
  if (c.size() != config.betaC.size())
    throw std::invalid_argument("po_mean: covariate length does not match config");
  double mean = config.beta0 + config.betaZ * z + config.betaZbar * zbar + config.betaU * u +
                config.betaUbar * ubar;
  if (c.size() > 0) mean += c.dot(config.betaC);
  return mean;
}

EffectPair pair_effects(const ScenarioConfig& config) {
  config.validate();
  const Eigen::VectorXd c0 = Eigen::VectorXd::Zero(config.p());
  EffectPair e;
  e.local = po_mean(config, 1.0, 0.0, c0, 0.0, 0.0) - po_mean(config, 0.0, 0.0, c0, 0.0, 0.0);
  e.interference =
      po_mean(config, 0.0, 1.0, c0, 0.0, 0.0) - po_mean(config, 0.0, 0.0, c0, 0.0, 0.0);
  return e;
}

double lambda_mix(double lambda0, double lambda1, double pi) {
  check_policy(pi, "lambda_mix");
  return pi * lambda1 + (1.0 - pi) * lambda0;
}

MonteCarloEffect network_local_effect(const ScenarioConfig& config, const AdjacencyStructure& adj,
                                      const Eigen::MatrixXd& c, const Eigen::VectorXd& u,
                                      double pi, int n_draws, SeededRng& rng) {
  config.validate();
  check_policy(pi, "network_local_effect");
  if (n_draws < 1) throw std::invalid_argument("network_local_effect: n_draws must be >= 1");
  const Eigen::VectorXd ubar = neighbor_average(adj, u);
  MonteCarloEffect out{Eigen::VectorXd(adj.n()), Eigen::VectorXd(adj.n())};
  for (int i = 0; i < adj.n(); ++i) {
    const auto treated = mc_policy_mean(config, adj, c, u, ubar, i, 1.0, pi, n_draws, rng);
    const auto control = mc_policy_mean(config, adj, c, u, ubar, i, 0.0, pi, n_draws, rng);
    out.values(i) = treated.mean - control.mean;
    out.std_errors(i) = std::sqrt((treated.variance + control.variance) / n_draws);
  }
  return out;
}

MonteCarloEffect network_interference_effect(const ScenarioConfig& config,
                                             const AdjacencyStructure& adj,
                                             const Eigen::MatrixXd& c, const Eigen::VectorXd& u,
                                             double z, double pi, double pi_prime, int n_draws,
                                             SeededRng& rng) {
  config.validate();
  check_policy(pi, "network_interference_effect");
  check_policy(pi_prime, "network_interference_effect");
  if (n_draws < 1)
    throw std::invalid_argument("network_interference_effect: n_draws must be >= 1");
  if (pi == pi_prime)
    return {Eigen::VectorXd::Zero(adj.n()), Eigen::VectorXd::Zero(adj.n())};
  const Eigen::VectorXd ubar = neighbor_average(adj, u);
  MonteCarloEffect out{Eigen::VectorXd(adj.n()), Eigen::VectorXd(adj.n())};
  for (int i = 0; i < adj.n(); ++i) {
    const auto shifted = mc_policy_mean(config, adj, c, u, ubar, i, z, pi_prime, n_draws, rng);
    const auto base = mc_policy_mean(config, adj, c, u, ubar, i, z, pi, n_draws, rng);
    out.values(i) = shifted.mean - base.mean;
    out.std_errors(i) = std::sqrt((shifted.variance + base.variance) / n_draws);
  }
  return out;
}

Eigen::VectorXd network_local_effect_exact(const ScenarioConfig& config,
                                           const AdjacencyStructure& adj,
                                           const Eigen::MatrixXd& c, const Eigen::VectorXd& u,
                                           double pi) {
  config.validate();
  check_policy(pi, "network_local_effect_exact");
  const Eigen::VectorXd ubar = neighbor_average(adj, u);
  Eigen::VectorXd out(adj.n());
  for (int i = 0; i < adj.n(); ++i)
    out(i) = exact_policy_mean(config, adj, c, u, ubar, i, 1.0, pi) -
             exact_policy_mean(config, adj, c, u, ubar, i, 0.0, pi);
  return out;
}

Eigen::VectorXd network_interference_effect_exact(const ScenarioConfig& config,
                                                  const AdjacencyStructure& adj,
                                                  const Eigen::MatrixXd& c,
                                                  const Eigen::VectorXd& u, double z, double pi,
                                                  double pi_prime) {
  config.validate();
  check_policy(pi, "network_interference_effect_exact");
  check_policy(pi_prime, "network_interference_effect_exact");
  const Eigen::VectorXd ubar = neighbor_average(adj, u);
  Eigen::VectorXd out(adj.n());
  for (int i = 0; i < adj.n(); ++i)
    out(i) = exact_policy_mean(config, adj, c, u, ubar, i, z, pi_prime) -
             exact_policy_mean(config, adj, c, u, ubar, i, z, pi);
  return out;
}

}  // namespace spcausal
