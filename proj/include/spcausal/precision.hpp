#pragma once

#include <Eigen/Dense>

#include "spcausal/adjacency.hpp"

namespace spcausal {

enum class PrecisionKind { conditional_u, conditional_z, joint_uz };

struct PrecisionMatrix {
  int dim = 0;
  PrecisionKind kind = PrecisionKind::conditional_u;
  Eigen::MatrixXd entries;
};

// Lower Cholesky factor of a symmetric matrix; throws NotPositiveDefiniteError
// unless every pivot exceeds 1e-12 times the largest diagonal entry.
Eigen::MatrixXd checked_cholesky(const Eigen::MatrixXd& m, const char* what);

// Conditional autoregressive precision tau^2 (D - phi A).
PrecisionMatrix car_precision(const AdjacencyStructure& adj, double tau, double phi,
                              PrecisionKind kind = PrecisionKind::conditional_u);

// 2n x 2n block precision [[G, Q], [Q, H]] with Q diagonal,
// q_i = -rho sqrt(g_ii h_ii). Throws if the result is not positive definite.
PrecisionMatrix joint_precision(const PrecisionMatrix& g, const PrecisionMatrix& h, double rho);

}  // namespace spcausal
