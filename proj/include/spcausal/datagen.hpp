#pragma once

#include <Eigen/Dense>
#include <utility>

#include "spcausal/adjacency.hpp"
#include "spcausal/dataset.hpp"
#include "spcausal/rng.hpp"
#include "spcausal/scenario_config.hpp"

namespace spcausal {

// n x p matrix of independent standard normal covariates.
Eigen::MatrixXd generate_covariates(int n, int p, SeededRng& rng);

// One draw of (U, Z) from the joint Gaussian with precision [[G, Q], [Q, H]]:
// factor P = L L^T, solve L^T x = w for standard normal w, add the mean
// (0 for U, gamma0 + C gammaC for Z).
std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_joint_uz(const AdjacencyStructure& adj,
                                                            const ScenarioConfig& config,
                                                            const Eigen::MatrixXd& c,
                                                            SeededRng& rng);

// Y_i = beta0 + betaZ Z_i + betaZbar Zbar_i + C_i betaC + betaU U_i
//       + betaUbar Ubar_i + N(0, sigmaY2).
Eigen::VectorXd sample_outcome(const ScenarioConfig& config, const Eigen::VectorXd& z,
                               const Eigen::VectorXd& zbar, const Eigen::MatrixXd& c,
                               const Eigen::VectorXd& u, const Eigen::VectorXd& ubar,
                               SeededRng& rng);

// Gaussian-exposure design on an arbitrary network: covariates, joint (U, Z),
// neighbor averages, then the linear outcome. Latent U, Ubar are retained.
Dataset generate_network_dataset(const AdjacencyStructure& adj, const ScenarioConfig& config,
                                 int p, SeededRng& rng);

// Paired design with a binary exposure: per pair, U and the exposure noise are
// bivariate normal (unit variance, correlations phiU and phiZ), and
// Z_i ~ Bernoulli(logistic(betaUZ U_i + eps_i)). No measured covariates.
Dataset generate_paired_binary_dataset(int n_pairs, const ScenarioConfig& config, SeededRng& rng);

}  // namespace spcausal
