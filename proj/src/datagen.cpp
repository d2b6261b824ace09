#include "spcausal/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "spcausal/errors.hpp"
#include "spcausal/precision.hpp"

namespace spcausal {

namespace {

Eigen::VectorXd standard_normal(int n, SeededRng& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng.engine);
  return v;
}

Eigen::VectorXd exposure_mean(const ScenarioConfig& config, const Eigen::MatrixXd& c, int n) {
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(n, config.gamma0);
  if (c.cols() > 0) mu += c * config.gammaC;
  return mu;
}

}  // namespace

Eigen::MatrixXd generate_covariates(int n, int p, SeededRng& rng) {
  if (n < 1) throw std::invalid_argument("generate_covariates: n must be >= 1");
  if (p < 0) throw std::invalid_argument("generate_covariates: p must be >= 0");
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd c(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) c(i, j) = gauss(rng.engine);
  return c;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_joint_uz(const AdjacencyStructure& adj,
                                                            const ScenarioConfig& config,
                                                            const Eigen::MatrixXd& c,
                                                            SeededRng& rng) {
  config.validate();
  const int n = adj.n();
  if (c.rows() != n && c.cols() > 0)
    throw std::invalid_argument("sample_joint_uz: covariate rows do not match n");
  const auto g = car_precision(adj, std::sqrt(config.tauU2), config.phiU,
                               PrecisionKind::conditional_u);
  const auto h = car_precision(adj, std::sqrt(config.tauZ2), config.phiZ,
                               PrecisionKind::conditional_z);
  const auto p = joint_precision(g, h, config.rho);
  const Eigen::MatrixXd l = checked_cholesky(p.entries, "sample_joint_uz");

  const Eigen::VectorXd w = standard_normal(2 * n, rng);
  const Eigen::VectorXd x = l.transpose().triangularView<Eigen::Upper>().solve(w);
  Eigen::VectorXd u = x.head(n);
  Eigen::VectorXd z = x.tail(n) + exposure_mean(config, c, n);
  return {std::move(u), std::move(z)};
}

Eigen::VectorXd sample_outcome(const ScenarioConfig& config, const Eigen::VectorXd& z,
                               const Eigen::VectorXd& zbar, const Eigen::MatrixXd& c,
                               const Eigen::VectorXd& u, const Eigen::VectorXd& ubar,
                               SeededRng& rng) {
  config.validate();
  const int n = static_cast<int>(z.size());
  if (zbar.size() != n || u.size() != n || ubar.size() != n || (c.cols() > 0 && c.rows() != n))
    throw std::invalid_argument("sample_outcome: input lengths differ");
  Eigen::VectorXd mean = Eigen::VectorXd::Constant(n, config.beta0);
  mean += config.betaZ * z + config.betaZbar * zbar + config.betaU * u + config.betaUbar * ubar;
  if (c.cols() > 0) mean += c * config.betaC;
  return mean + std::sqrt(config.sigmaY2) * standard_normal(n, rng);
}

Dataset generate_network_dataset(const AdjacencyStructure& adj, const ScenarioConfig& config,
                                 int p, SeededRng& rng) {
  config.validate();
  if (p != config.p())
    throw std::invalid_argument("generate_network_dataset: p does not match config");
  Dataset data(adj);
  data.seed = rng.seed;
  data.c = generate_covariates(adj.n(), p, rng);
  auto [u, z] = sample_joint_uz(adj, config, data.c, rng);
  data.z = std::move(z);
  data.zbar = neighbor_average(adj, data.z);
  data.u = std::move(u);
  data.ubar = neighbor_average(adj, *data.u);
  data.y = sample_outcome(config, data.z, data.zbar, data.c, *data.u, *data.ubar, rng);
  return data;
}

Dataset generate_paired_binary_dataset(int n_pairs, const ScenarioConfig& config, SeededRng& rng) {
  config.validate();
  if (n_pairs < 1)
    throw std::invalid_argument("generate_paired_binary_dataset: n_pairs must be >= 1");
  if (config.p() != 0)
    throw std::invalid_argument("generate_paired_binary_dataset: design has no covariates");
  const int n = 2 * n_pairs;
  Dataset data(pair_adjacency(n_pairs));
  data.seed = rng.seed;
  data.c.resize(n, 0);
  data.u = Eigen::VectorXd(n);
  data.z.resize(n);

  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;
  const double su = std::sqrt(1.0 - config.phiU * config.phiU);
  const double sz = std::sqrt(1.0 - config.phiZ * config.phiZ);
  for (int p = 0; p < n_pairs; ++p) {
    const double n1 = gauss(rng.engine), n2 = gauss(rng.engine);
    const double u1 = n1;
    const double u2 = config.phiU * n1 + su * n2;
    const double e1 = gauss(rng.engine), e2 = gauss(rng.engine);
    const double eps1 = e1;
    const double eps2 = config.phiZ * e1 + sz * e2;
    (*data.u)(2 * p) = u1;
    (*data.u)(2 * p + 1) = u2;
    const double p1 = 1.0 / (1.0 + std::exp(-(config.betaUZ * u1 + eps1)));
    const double p2 = 1.0 / (1.0 + std::exp(-(config.betaUZ * u2 + eps2)));
    data.z(2 * p) = unif(rng.engine) < p1 ? 1.0 : 0.0;
    data.z(2 * p + 1) = unif(rng.engine) < p2 ? 1.0 : 0.0;
  }
  data.zbar = neighbor_average(data.adjacency, data.z);
  data.ubar = neighbor_average(data.adjacency, *data.u);
  data.y = sample_outcome(config, data.z, data.zbar, data.c, *data.u, *data.ubar, rng);
  return data;
}

}  // namespace spcausal
