#pragma once

#include <Eigen/Dense>
#include <limits>

#include "spcausal/adjacency.hpp"
#include "spcausal/rng.hpp"
#include "spcausal/scenario_config.hpp"

namespace spcausal {

// True causal contrasts under the linear structural model. A NaN
// conditioning_level marks an effect that is constant across neighbor
// treatment levels (the no-interaction case).
struct EffectPair {
  double local = 0.0;
  double interference = 0.0;
  double conditioning_level = std::numeric_limits<double>::quiet_NaN();
};

// Deterministic mean of the potential outcome at (z, zbar) given covariates
// and confounder values.
double po_mean(const ScenarioConfig& config, double z, double zbar, const Eigen::VectorXd& c,
               double u, double ubar);

// Local and interference effects for the paired design, computed by
// differencing po_mean rather than reading coefficients.
EffectPair pair_effects(const ScenarioConfig& config);

// pi lambda1 + (1 - pi) lambda0.
double lambda_mix(double lambda0, double lambda1, double pi);

// Per-unit Monte Carlo estimate with its standard error, so callers can judge
// agreement with exact values on the sampling-error scale.
struct MonteCarloEffect {
  Eigen::VectorXd values;
  Eigen::VectorXd std_errors;
};

// Per-unit lambda_i(pi): Monte Carlo average over neighbor-treatment draws
// Bernoulli(pi) of the own-treatment contrast. The two policy arms use
// independent draws, so the Monte Carlo error is real and measurable.
MonteCarloEffect network_local_effect(const ScenarioConfig& config, const AdjacencyStructure& adj,
                                      const Eigen::MatrixXd& c, const Eigen::VectorXd& u,
                                      double pi, int n_draws, SeededRng& rng);

// Per-unit iota_i(pi, pi_prime; z): Monte Carlo contrast of neighbor policies
// at fixed own treatment. Identical policies give exactly zero.
MonteCarloEffect network_interference_effect(const ScenarioConfig& config,
                                             const AdjacencyStructure& adj,
                                             const Eigen::MatrixXd& c, const Eigen::VectorXd& u,
                                             double z, double pi, double pi_prime, int n_draws,
                                             SeededRng& rng);

// Exact versions: the neighbor average takes degree+1 values, so the policy
// expectation collapses to a binomial sum over the number of treated
// neighbors. Equal to full enumeration over all 2^degree assignments.
Eigen::VectorXd network_local_effect_exact(const ScenarioConfig& config,
                                           const AdjacencyStructure& adj,
                                           const Eigen::MatrixXd& c, const Eigen::VectorXd& u,
                                           double pi);
Eigen::VectorXd network_interference_effect_exact(const ScenarioConfig& config,
                                                  const AdjacencyStructure& adj,
                                                  const Eigen::MatrixXd& c,
                                                  const Eigen::VectorXd& u, double z, double pi,
                                                  double pi_prime);

}  // namespace spcausal
