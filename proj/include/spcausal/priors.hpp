#pragma once

#include "spcausal/dataset.hpp"

namespace spcausal {

// Hyperparameters of the prior system. The data-driven pieces come from
// preliminary OLS fits on the dataset being analyzed; everything else is a
// fixed constant of the method.
struct PriorConfig {
  double sigma2_prior = 2.0;         // variance of the normal priors on coefficients
  double sigma2_prior_ubar = 0.1225; // variance of the prior on the neighbor-confounder slope
  double alphaY = 3.0;
  double betaY = 0.0;       // 3 * sigma2_y_hat / 4
  double tauU_scale = 0.0;  // variance of the untruncated normal on 1/tauU, d * sigma2_prior / 2
  double tauZ_center = 0.0; // sqrt(d * sigma2_z_hat / 2)
  double tauZ_sd = 1.0;
  double tauZ_lower = 0.0;  // sqrt(d * 0.01 * s2_z_sample)
  double tauZ_upper = 0.0;  // sqrt(d * sigma2_z_hat / 0.8)
  double phiU_beta_a = 6.0;
  double phiU_beta_b = 6.0;
  double d = 0.0;           // median degree

  // Inputs to the formulas above, kept for initialization and checks.
  double sigma2_y_hat = 0.0; // residual variance of Y on (1, Z, Zbar, C)
  double sigma2_z_hat = 0.0; // residual variance of Z on (1, C)
  double s2_z_sample = 0.0;  // sample variance of Z
  bool degenerate_outcome_variance = false; // sigma2_y_hat ~ 0, betaY collapses

  void validate() const;
};

// Builds the prior configuration from preliminary regressions on the data.
// The overload takes the adjacency whose median degree scales the precision
// priors, for fits whose spatial adjacency differs from the dataset's own.
PriorConfig default_priors(const Dataset& data);
PriorConfig default_priors(const Dataset& data, const AdjacencyStructure& spatial_adj);

}  // namespace spcausal
