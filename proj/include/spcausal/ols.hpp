#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "spcausal/dataset.hpp"

namespace spcausal {

// Which regressors join the fit. The exposure itself is always included.
struct ConditioningSet {
  bool include_z = true;
  bool include_zbar = false;
  bool include_u = false;
  bool include_ubar = false;
  bool include_c = false;

  std::string label() const;  // e.g. "(Z, Zbar, U)"
};

struct OlsFit {
  std::vector<std::string> names;
  Eigen::VectorXd coefficients;
  Eigen::VectorXd standard_errors;
  Eigen::VectorXd ci_lower;
  Eigen::VectorXd ci_upper;
  double residual_variance = 0.0;
  int n = 0;
  int k = 0;

  int index_of(const std::string& name) const;  // MissingColumnError if absent
  double coefficient(const std::string& name) const;
  double standard_error(const std::string& name) const;
  std::pair<double, double> ci(const std::string& name) const;
};

struct Design {
  Eigen::MatrixXd x;
  std::vector<std::string> names;
};

// Intercept first, then z, zbar, u, ubar, then the measured covariates.
Design build_design(const Dataset& data, const ConditioningSet& cond);

// Householder QR fit; standard errors from sigma2 (X^T X)^{-1} with
// sigma2 = RSS / (n - k); 95% CI = estimate +- 1.96 SE.
OlsFit fit_ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
               std::vector<std::string> names = {});

inline OlsFit fit_ols(const Eigen::VectorXd& y, const Design& design) {
  return fit_ols(y, design.x, design.names);
}

}  // namespace spcausal
