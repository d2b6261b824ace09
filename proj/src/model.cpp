#include "spcausal/model.hpp"

#include <cmath>
#include <stdexcept>

#include "spcausal/errors.hpp"
#include "spcausal/precision.hpp"

namespace spcausal {

Eigen::VectorXd McmcState::eta() const {
  Eigen::VectorXd v(4 + betaC.size());
  v(0) = beta0;
  v(1) = betaZ;
  v(2) = betaZbar;
  v(3) = betaUbar;
  if (betaC.size() > 0) v.tail(betaC.size()) = betaC;
  return v;
}

void McmcState::set_eta(const Eigen::VectorXd& v) {
  if (v.size() != 4 + betaC.size())
    throw std::invalid_argument("set_eta: wrong length");
  beta0 = v(0);
  betaZ = v(1);
  betaZbar = v(2);
  betaUbar = v(3);
  if (betaC.size() > 0) betaC = v.tail(betaC.size());
}

Eigen::VectorXd McmcState::gamma() const {
  Eigen::VectorXd v(1 + gammaC.size());
  v(0) = gamma0;
  if (gammaC.size() > 0) v.tail(gammaC.size()) = gammaC;
  return v;
}

void McmcState::set_gamma(const Eigen::VectorXd& v) {
  if (v.size() != 1 + gammaC.size())
    throw std::invalid_argument("set_gamma: wrong length");
  gamma0 = v(0);
  if (gammaC.size() > 0) gammaC = v.tail(gammaC.size());
}

std::vector<std::string> state_names(int p) {
  std::vector<std::string> names = {"beta0", "betaZ", "betaZbar", "betaUbar"};
  for (int j = 1; j <= p; ++j) names.push_back("betaC" + std::to_string(j));
  names.push_back("gamma0");
  for (int j = 1; j <= p; ++j) names.push_back("gammaC" + std::to_string(j));
  for (const char* s : {"sigmaY2", "tauU", "tauZ", "phiU", "phiZ", "rho"})
    names.push_back(s);
  return names;
}

Eigen::VectorXd state_values(const McmcState& state) {
  const auto p = state.betaC.size();
  Eigen::VectorXd v(2 * p + 11);
  v.head(4 + p) = state.eta();
  v.segment(4 + p, 1 + p) = state.gamma();
  v.tail(6) << state.sigmaY2, state.tauU, state.tauZ, state.phiU, state.phiZ, state.rho;
  return v;
}

McmcState state_from_values(const Eigen::VectorXd& row, int p) {
  if (row.size() != 2 * p + 11)
    throw std::invalid_argument("state_from_values: wrong length for p");
  McmcState s;
  s.betaC.resize(p);
  s.gammaC.resize(p);
  s.set_eta(row.head(4 + p));
  s.set_gamma(row.segment(4 + p, 1 + p));
  s.sigmaY2 = row(2 * p + 5);
  s.tauU = row(2 * p + 6);
  s.tauZ = row(2 * p + 7);
  s.phiU = row(2 * p + 8);
  s.phiZ = row(2 * p + 9);
  s.rho = row(2 * p + 10);
  return s;
}

ModelWorkspace::ModelWorkspace(const Dataset& data)
    : ModelWorkspace(data, data.adjacency) {}

ModelWorkspace::ModelWorkspace(const Dataset& data, const AdjacencyStructure& spatial_adj)
    : y(data.y), z(data.z), zbar(data.zbar), c(data.c), n_(data.n()), p_(data.p()) {
  if (spatial_adj.n() != data.n())
    throw std::invalid_argument("model: spatial adjacency size mismatch");
  a = spatial_adj.matrix();
  deg = spatial_adj.degrees();
  const Eigen::VectorXd exposure_deg = data.adjacency.degrees();
  if (deg.minCoeff() <= 0.0 || exposure_deg.minCoeff() <= 0.0)
    throw IsolatedUnitError("model: every unit needs at least one neighbor");

  const Eigen::VectorXd dinv_sqrt = deg.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd a_norm =
      dinv_sqrt.asDiagonal() * a * dinv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a_norm);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("model: eigendecomposition of normalized adjacency failed");
  lambda = es.eigenvalues();

  navg = exposure_deg.cwiseInverse().asDiagonal() * data.adjacency.matrix();
  navg_sym = navg + navg.transpose();
  navg_gram = navg.transpose() * navg;

  w.resize(n_, 1 + p_);
  w.col(0).setOnes();
  if (p_ > 0) w.rightCols(p_) = c;
  wt_d = w.transpose() * deg.asDiagonal();
  wt_d_w = wt_d * w;
  wt_a_w = w.transpose() * a * w;
  wt_d_z = wt_d * z;
  wt_a_z = w.transpose() * (a * z);
}

Eigen::MatrixXd ModelWorkspace::outcome_design(const McmcState& state) const {
  Eigen::MatrixXd x(n_, 4 + p_);
  x.col(0).setOnes();
  x.col(1) = z;
  x.col(2) = zbar;
  x.col(3) = navg * state.u;
  if (p_ > 0) x.rightCols(p_) = c;
  return x;
}

Eigen::VectorXd ModelWorkspace::outcome_mean_without_u(const McmcState& state) const {
  Eigen::VectorXd m = Eigen::VectorXd::Constant(n_, state.beta0) + state.betaZ * z +
                      state.betaZbar * zbar;
  if (p_ > 0) m += c * state.betaC;
  return m;
}

Eigen::VectorXd ModelWorkspace::exposure_mean(const McmcState& state) const {
  Eigen::VectorXd m = Eigen::VectorXd::Constant(n_, state.gamma0);
  if (p_ > 0) m += c * state.gammaC;
  return m;
}

bool joint_precision_is_pd(const Eigen::VectorXd& lambda, double phiU, double phiZ, double rho) {
  const double rho2 = rho * rho;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const double du = 1.0 - phiU * lambda(k);
    const double dz = 1.0 - phiZ * lambda(k);
    if (du <= 0.0 || dz <= 0.0 || du * dz <= rho2) return false;
  }
  return true;
}

void check_state(const McmcState& state, const ModelWorkspace& ws, const PriorConfig& priors) {
  if (state.betaC.size() != ws.p() || state.gammaC.size() != ws.p())
    throw InvalidStateError("state: covariate coefficient length mismatch");
  if (state.u.size() != ws.n())
    throw InvalidStateError("state: latent vector length mismatch");
  if (!(state.sigmaY2 > 0.0)) throw InvalidStateError("state: sigmaY2 must be positive");
  if (!(state.tauU > 0.0)) throw InvalidStateError("state: tauU must be positive");
  if (!(state.tauZ > 0.0)) throw InvalidStateError("state: tauZ must be positive");
  const double vz = 1.0 / state.tauZ;
  if (!(vz >= priors.tauZ_lower && vz <= priors.tauZ_upper))
    throw InvalidStateError("state: 1/tauZ outside its prior support");
  if (!(state.phiU > 0.0 && state.phiU < 1.0))
    throw InvalidStateError("state: phiU must lie in (0,1)");
  if (!(std::abs(state.phiZ) < 1.0)) throw InvalidStateError("state: |phiZ| must be < 1");
  if (!(std::abs(state.rho) < 1.0)) throw InvalidStateError("state: |rho| must be < 1");
  if (!(state.phiZ < state.phiU))
    throw InvalidStateError("state: requires phiZ < phiU");
  if (!joint_precision_is_pd(ws.lambda, state.phiU, state.phiZ, state.rho))
    throw InvalidStateError("state: joint precision is not positive definite");
}

QuadraticForms quadratic_forms(const ModelWorkspace& ws, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& r) {
  QuadraticForms qf;
  const Eigen::VectorXd au = ws.a * u;
  const Eigen::VectorXd ar = ws.a * r;
  qf.u_d_u = u.dot(ws.deg.cwiseProduct(u));
  qf.u_a_u = u.dot(au);
  qf.u_d_r = u.dot(ws.deg.cwiseProduct(r));
  qf.r_d_r = r.dot(ws.deg.cwiseProduct(r));
  qf.r_a_r = r.dot(ar);
  return qf;
}

double covariance_logdensity(const McmcState& state, const ModelWorkspace& ws,
                             const QuadraticForms& qf) {
  const int n = ws.n();
  const double tu = state.tauU, tz = state.tauZ;
  double logdet = 2.0 * n * (std::log(tu) + std::log(tz));
  const double rho2 = state.rho * state.rho;
  for (int k = 0; k < n; ++k) {
    const double du = 1.0 - state.phiU * ws.lambda(k);
    const double dz = 1.0 - state.phiZ * ws.lambda(k);
    logdet += std::log(du * dz - rho2);
  }
  const double quad = tu * tu * (qf.u_d_u - state.phiU * qf.u_a_u) -
                      2.0 * state.rho * tu * tz * qf.u_d_r +
                      tz * tz * (qf.r_d_r - state.phiZ * qf.r_a_r);
  return 0.5 * logdet - 0.5 * quad;
}

double hyper_log_prior(const McmcState& state, const PriorConfig& priors) {
  // 1/tau priors with the change of variables to tau (factor tau^-2).
  const double vu = 1.0 / state.tauU;
  double lp = -0.5 * vu * vu / priors.tauU_scale - 2.0 * std::log(state.tauU);
  const double vz = 1.0 / state.tauZ;
  const double zdev = (vz - priors.tauZ_center) / priors.tauZ_sd;
  lp += -0.5 * zdev * zdev - 2.0 * std::log(state.tauZ);
  lp += (priors.phiU_beta_a - 1.0) * std::log(state.phiU) +
        (priors.phiU_beta_b - 1.0) * std::log1p(-state.phiU);
  // phiZ and rho are flat on their supports.
  return lp;
}

double log_joint(const McmcState& state, const ModelWorkspace& ws, const PriorConfig& priors) {
  check_state(state, ws, priors);
  const int n = ws.n();

  // Outcome likelihood.
  const Eigen::VectorXd resid =
      ws.y - ws.outcome_mean_without_u(state) - state.betaU * state.u -
      state.betaUbar * (ws.navg * state.u);
  double lp = -0.5 * n * std::log(state.sigmaY2) -
              0.5 * resid.squaredNorm() / state.sigmaY2;

  // Joint density of (U, Z - W gamma), dense evaluation for reference use.
  {
    const double tu2 = state.tauU * state.tauU;
    const double tz2 = state.tauZ * state.tauZ;
    Eigen::MatrixXd g = (-tu2 * state.phiU) * ws.a;
    g.diagonal() += tu2 * ws.deg;
    Eigen::MatrixXd h = (-tz2 * state.phiZ) * ws.a;
    h.diagonal() += tz2 * ws.deg;
    Eigen::MatrixXd joint(2 * n, 2 * n);
    joint.topLeftCorner(n, n) = g;
    joint.bottomRightCorner(n, n) = h;
    joint.topRightCorner(n, n).setZero();
    joint.bottomLeftCorner(n, n).setZero();
    const Eigen::VectorXd q = -state.rho * state.tauU * state.tauZ * ws.deg;
    joint.topRightCorner(n, n).diagonal() = q;
    joint.bottomLeftCorner(n, n).diagonal() = q;

    Eigen::LLT<Eigen::MatrixXd> llt(joint);
    if (llt.info() != Eigen::Success)
      throw InvalidStateError("log_joint: joint precision factorization failed");
    double logdet = 0.0;
    for (int i = 0; i < 2 * n; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));

    Eigen::VectorXd stacked(2 * n);
    stacked.head(n) = state.u;
    stacked.tail(n) = ws.z - ws.exposure_mean(state);
    lp += 0.5 * logdet - 0.5 * stacked.dot(joint * stacked);
  }

  // Coefficient priors.
  const Eigen::VectorXd eta = state.eta();
  for (Eigen::Index j = 0; j < eta.size(); ++j) {
    const double v = j == 3 ? priors.sigma2_prior_ubar : priors.sigma2_prior;
    lp += -0.5 * eta(j) * eta(j) / v;
  }
  const Eigen::VectorXd gam = state.gamma();
  lp += -0.5 * gam.squaredNorm() / priors.sigma2_prior;

  // Residual-variance prior.
  lp += -(priors.alphaY + 1.0) * std::log(state.sigmaY2) - priors.betaY / state.sigmaY2;

  return lp + hyper_log_prior(state, priors);
}

GaussianConditional eta_conditional(const McmcState& state, const ModelWorkspace& ws,
                                    const PriorConfig& priors) {
  const Eigen::MatrixXd x = ws.outcome_design(state);
  const int k = static_cast<int>(x.cols());
  Eigen::VectorXd prior_prec = Eigen::VectorXd::Constant(k, 1.0 / priors.sigma2_prior);
  prior_prec(3) = 1.0 / priors.sigma2_prior_ubar;
  GaussianConditional fc;
  fc.precision = x.transpose() * x / state.sigmaY2;
  fc.precision.diagonal() += prior_prec;
  fc.linear = x.transpose() * (ws.y - state.betaU * state.u) / state.sigmaY2;
  return fc;
}

std::pair<double, double> sigma_conditional(const McmcState& state, const ModelWorkspace& ws,
                                            const PriorConfig& priors) {
  const Eigen::MatrixXd x = ws.outcome_design(state);
  const Eigen::VectorXd resid = ws.y - x * state.eta() - state.betaU * state.u;
  return {priors.alphaY + 0.5 * ws.n(), priors.betaY + 0.5 * resid.squaredNorm()};
}

GaussianConditional gamma_conditional(const McmcState& state, const ModelWorkspace& ws,
                                      const PriorConfig& priors) {
  const double tz2 = state.tauZ * state.tauZ;
  GaussianConditional fc;
  fc.precision = tz2 * (ws.wt_d_w - state.phiZ * ws.wt_a_w);
  fc.precision.diagonal().array() += 1.0 / priors.sigma2_prior;
  // W' (H z + Q u) with H = tauZ^2 (D - phiZ A), Q = -rho tauU tauZ D.
  fc.linear = tz2 * (ws.wt_d_z - state.phiZ * ws.wt_a_z) -
              state.rho * state.tauU * state.tauZ * (ws.wt_d * state.u);
  return fc;
}

GaussianConditional u_conditional(const McmcState& state, const ModelWorkspace& ws,
                                  const PriorConfig& priors) {
  (void)priors;
  const int n = ws.n();
  const double tu2 = state.tauU * state.tauU;
  GaussianConditional fc;
  // Prior block: G plus the cross-precision pull toward the exposure.
  fc.precision = (-tu2 * state.phiU) * ws.a;
  fc.precision.diagonal() += tu2 * ws.deg;
  // Likelihood block: M = I + betaUbar N, precision M'M / sigmaY2.
  const double bu = state.betaUbar;
  fc.precision += (1.0 / state.sigmaY2) *
                  (bu * ws.navg_sym + bu * bu * ws.navg_gram);
  fc.precision.diagonal().array() += 1.0 / state.sigmaY2;

  const Eigen::VectorXd ry = ws.y - ws.outcome_mean_without_u(state);
  const Eigen::VectorXd rz = ws.z - ws.exposure_mean(state);
  fc.linear = (ry + bu * (ws.navg.transpose() * ry)) / state.sigmaY2 +
              state.rho * state.tauU * state.tauZ * ws.deg.cwiseProduct(rz);
  return fc;
}

}  // namespace spcausal
