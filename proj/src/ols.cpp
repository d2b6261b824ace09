#include "spcausal/ols.hpp"

#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

#include "spcausal/errors.hpp"

namespace spcausal {

std::string ConditioningSet::label() const {
  std::string out = "(Z";
  if (include_zbar) out += ", Zbar";
  if (include_u) out += ", U";
  if (include_ubar) out += ", Ubar";
  if (include_c) out += ", C";
  return out + ")";
}

int OlsFit::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  throw MissingColumnError("OlsFit: no coefficient named \"" + name + "\"");
}

double OlsFit::coefficient(const std::string& name) const { return coefficients(index_of(name)); }

double OlsFit::standard_error(const std::string& name) const {
  return standard_errors(index_of(name));
}

std::pair<double, double> OlsFit::ci(const std::string& name) const {
  const int i = index_of(name);
  return {ci_lower(i), ci_upper(i)};
}

Design build_design(const Dataset& data, const ConditioningSet& cond) {
  if (!cond.include_z)
    throw std::invalid_argument("build_design: the exposure must be in the conditioning set");
  if ((cond.include_u || cond.include_ubar) && !data.u)
    throw MissingColumnError("build_design: dataset has no latent confounder columns");

  const int n = data.n();
  int k = 2;  // intercept + z
  if (cond.include_zbar) ++k;
  if (cond.include_u) ++k;
  if (cond.include_ubar) ++k;
  if (cond.include_c) k += data.p();

  Design design;
  design.x.resize(n, k);
  int col = 0;
  design.x.col(col++) = Eigen::VectorXd::Ones(n);
  design.names.push_back("intercept");
  design.x.col(col) = data.z;
  design.names.push_back("z");
  ++col;
  if (cond.include_zbar) {
    design.x.col(col++) = data.zbar;
    design.names.push_back("zbar");
  }
  if (cond.include_u) {
    design.x.col(col++) = *data.u;
    design.names.push_back("u");
  }
  if (cond.include_ubar) {
    design.x.col(col++) = *data.ubar;
    design.names.push_back("ubar");
  }
  if (cond.include_c) {
    for (int j = 0; j < data.p(); ++j) {
      design.x.col(col++) = data.c.col(j);
      design.names.push_back("c" + std::to_string(j + 1));
    }
  }
  return design;
}

OlsFit fit_ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
               std::vector<std::string> names) {
  const int n = static_cast<int>(x.rows());
  const int k = static_cast<int>(x.cols());
  if (y.size() != n) throw std::invalid_argument("fit_ols: y length does not match design rows");
  if (n <= k)
    throw InsufficientDataError("fit_ols: need more observations (" + std::to_string(n) +
                                ") than coefficients (" + std::to_string(k) + ")");
  if (names.empty())
    for (int j = 0; j < k; ++j) names.push_back("x" + std::to_string(j));
  if (static_cast<int>(names.size()) != k)
    throw std::invalid_argument("fit_ols: name count does not match columns");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  if (qr.rank() < k)
    throw CollinearityError("fit_ols: design is rank deficient (rank " +
                            std::to_string(qr.rank()) + " of " + std::to_string(k) + ")");

  OlsFit fit;
  fit.names = std::move(names);
  fit.n = n;
  fit.k = k;
  fit.coefficients = qr.solve(y);
  const Eigen::VectorXd residuals = y - x * fit.coefficients;
  fit.residual_variance = residuals.squaredNorm() / (n - k);

  // (X^T X)^{-1} from the pivoted factor: X P = Q R gives
  // (X^T X)^{-1} = P R^{-1} R^{-T} P^T.
  const Eigen::MatrixXd r = qr.matrixR().topRows(k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd rinv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd xtx_inv_permuted = rinv * rinv.transpose();
  const auto& perm = qr.colsPermutation();
  const Eigen::MatrixXd xtx_inv = perm * xtx_inv_permuted * perm.transpose();

  fit.standard_errors.resize(k);
  for (int j = 0; j < k; ++j)
    fit.standard_errors(j) = std::sqrt(std::max(0.0, fit.residual_variance * xtx_inv(j, j)));
  fit.ci_lower = fit.coefficients - 1.96 * fit.standard_errors;
  fit.ci_upper = fit.coefficients + 1.96 * fit.standard_errors;
  return fit;
}

}  // namespace spcausal
