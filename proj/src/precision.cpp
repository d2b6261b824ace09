#include "spcausal/precision.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spcausal/errors.hpp"

namespace spcausal {

Eigen::MatrixXd checked_cholesky(const Eigen::MatrixXd& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefiniteError(std::string(what) + ": Cholesky factorization failed");
  Eigen::MatrixXd l = llt.matrixL();
  const double floor = 1e-12 * m.diagonal().maxCoeff();
  for (int i = 0; i < l.rows(); ++i) {
    const double pivot = l(i, i) * l(i, i);
    if (!(pivot > floor))
      throw NotPositiveDefiniteError(std::string(what) + ": pivot " + std::to_string(i) +
                                     " below tolerance");
  }
  return l;
}

PrecisionMatrix car_precision(const AdjacencyStructure& adj, double tau, double phi,
                              PrecisionKind kind) {
  if (!(tau > 0.0)) throw std::invalid_argument("car_precision: tau must be positive");
  if (!(std::abs(phi) < 1.0)) throw std::invalid_argument("car_precision: |phi| must be < 1");
  if (kind == PrecisionKind::joint_uz)
    throw std::invalid_argument("car_precision: kind must be a conditional kind");
  PrecisionMatrix p;
  p.dim = adj.n();
  p.kind = kind;
  p.entries = tau * tau *
              (Eigen::MatrixXd(adj.degrees().asDiagonal()) - phi * adj.matrix());
  return p;
}

PrecisionMatrix joint_precision(const PrecisionMatrix& g, const PrecisionMatrix& h, double rho) {
  if (g.dim != h.dim)
    throw std::invalid_argument("joint_precision: G and H dimensions differ");
  if (!(std::abs(rho) < 1.0))
    throw std::invalid_argument("joint_precision: |rho| must be < 1");
  const int n = g.dim;
  PrecisionMatrix p;
  p.dim = 2 * n;
  p.kind = PrecisionKind::joint_uz;
  p.entries = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  p.entries.topLeftCorner(n, n) = g.entries;
  p.entries.bottomRightCorner(n, n) = h.entries;
  for (int i = 0; i < n; ++i) {
    const double q = -rho * std::sqrt(g.entries(i, i) * h.entries(i, i));
    p.entries(i, n + i) = q;
    p.entries(n + i, i) = q;
  }
  checked_cholesky(p.entries, "joint_precision");
  return p;
}

}  // namespace spcausal
