#pragma once

#include <cstdint>
#include <vector>

#include "spcausal/model.hpp"
#include "spcausal/rng.hpp"

namespace spcausal {

// Random-walk step sizes on the unconstrained proposal scales, plus the
// acceptance rate the burn-in adaptation steers toward.
struct McmcTuning {
  double step_log_tauU = 0.3;
  double step_log_tauZ = 0.3;
  double step_logit_phiU = 0.6;
  double step_logit_phiZ = 0.4;
  double step_atanh_rho = 0.3;
  double target_accept = 0.35;
};

// Per-block Metropolis bookkeeping: proposals made and accepted.
struct AcceptanceCounts {
  long proposals[5] = {0, 0, 0, 0, 0};
  long accepts[5] = {0, 0, 0, 0, 0};
};

struct PosteriorChain {
  std::vector<McmcState> draws;
  std::vector<double> acceptance_rates;  // tauU, tauZ, phiU, phiZ, rho
  std::uint64_t seed = 0;
  int n_iter = 0;
  int n_burnin = 0;
  int thin = 0;
};

// Draws from N(precision^-1 linear, precision^-1) via one Cholesky of the
// precision. Every Gibbs block goes through this routine.
Eigen::VectorXd sample_gaussian(const GaussianConditional& fc, SeededRng& rng);

// One full sweep over the five blocks: outcome coefficients, residual
// variance, exposure-mean coefficients, latent vector, covariance
// hyperparameters. Mutates state in place.
void mcmc_step(McmcState& state, const ModelWorkspace& ws, const PriorConfig& priors,
               const McmcTuning& tuning, SeededRng& rng, AcceptanceCounts* counts = nullptr);

// Prior-plausible initial state: coefficient blocks from OLS, variances from
// the prior centers, plus seed-dependent jitter of about one prior standard
// deviation so independent chains start over-dispersed.
McmcState initial_state(const ModelWorkspace& ws, const PriorConfig& priors, SeededRng& rng);

// Runs a full chain: jittered initialization, step-size adaptation during
// burn-in only, thinned storage afterwards.
PosteriorChain run_chain(const ModelWorkspace& ws, const PriorConfig& priors, int n_iter,
                         int n_burnin, int thin, std::uint64_t seed,
                         const McmcTuning& tuning = McmcTuning());

inline constexpr int default_n_iter = 25000;
inline constexpr int default_n_burnin = 7000;
inline constexpr int default_thin = 60;

}  // namespace spcausal
