#pragma once

#include <Eigen/Dense>
#include <string>

namespace spcausal {

// Full parameter set of the linear structural model. Each scenario pins some
// coefficients to zero; validate() enforces those constraints together with
// the parameter ranges.
struct ScenarioConfig {
  std::string scenario_id = "2f";  // 2a..2f, or full

  // Outcome model.
  double beta0 = 0.0;
  double betaZ = 0.0;
  double betaZbar = 0.0;
  double betaU = 0.0;
  double betaUbar = 0.0;
  Eigen::VectorXd betaC;
  double sigmaY2 = 1.0;

  // Exposure model.
  double gamma0 = 0.0;
  Eigen::VectorXd gammaC;
  double betaUZ = 0.0;  // binary-pair design only

  // Spatial structure.
  double tauU2 = 1.0;
  double tauZ2 = 1.0;
  double phiU = 0.0;
  double phiZ = 0.0;
  double rho = 0.0;

  int p() const { return static_cast<int>(betaC.size()); }

  // Throws invalid_argument on range violations or broken zero-constraints.
  void validate() const;

  // Validate-at-construction entry point.
  static ScenarioConfig checked(ScenarioConfig raw);
};

}  // namespace spcausal
