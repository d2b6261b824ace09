#include "spcausal/priors.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "spcausal/errors.hpp"
#include "spcausal/ols.hpp"

namespace spcausal {

void PriorConfig::validate() const {
  if (betaY < 0.0 || tauU_scale <= 0.0 || sigma2_prior <= 0.0 || sigma2_prior_ubar <= 0.0)
    throw std::invalid_argument("priors: scales must be positive");
  if (!degenerate_outcome_variance && betaY <= 0.0)
    throw std::invalid_argument("priors: betaY must be positive for non-degenerate data");
  if (tauZ_lower >= tauZ_center || tauZ_center >= tauZ_upper)
    throw std::invalid_argument("priors: tauZ bounds must straddle the center");
}

PriorConfig default_priors(const Dataset& data) {
  return default_priors(data, data.adjacency);
}

PriorConfig default_priors(const Dataset& data, const AdjacencyStructure& spatial_adj) {
  const int n = data.n();
  const int p = data.p();
  if (n < p + 4)
    throw InsufficientDataError("default_priors: need at least p + 4 observations");

  PriorConfig priors;
  priors.d = spatial_adj.median_degree();

  // Residual variance of the outcome on the measured exposures and covariates.
  {
    Eigen::MatrixXd x(n, 3 + p);
    x.col(0).setOnes();
    x.col(1) = data.z;
    x.col(2) = data.zbar;
    if (p > 0) x.rightCols(p) = data.c;
    priors.sigma2_y_hat = fit_ols(data.y, x).residual_variance;
  }
  priors.betaY = 3.0 * priors.sigma2_y_hat / 4.0;
  if (priors.sigma2_y_hat < 1e-12) {
    priors.degenerate_outcome_variance = true;
    std::cerr << "warning: outcome is (nearly) exactly linear in the design; "
                 "residual-variance prior is degenerate\n";
  }

  // Residual variance of the exposure on the measured covariates.
  {
    Eigen::MatrixXd w(n, 1 + p);
    w.col(0).setOnes();
    if (p > 0) w.rightCols(p) = data.c;
    priors.sigma2_z_hat = fit_ols(data.z, w).residual_variance;
  }
  {
    const Eigen::VectorXd centered = data.z.array() - data.z.mean();
    priors.s2_z_sample = centered.squaredNorm() / (n - 1.0);
  }

  priors.tauU_scale = priors.d * priors.sigma2_prior / 2.0;
  priors.tauZ_center = std::sqrt(priors.d * priors.sigma2_z_hat / 2.0);
  priors.tauZ_sd = 1.0;
  priors.tauZ_lower = std::sqrt(priors.d * 0.01 * priors.s2_z_sample);
  priors.tauZ_upper = std::sqrt(priors.d * priors.sigma2_z_hat / 0.8);
  priors.validate();
  return priors;
}

}  // namespace spcausal
