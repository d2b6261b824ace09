#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "spcausal/dataset.hpp"
#include "spcausal/priors.hpp"

namespace spcausal {

// Parameter state of the latent-confounder model. The local-confounder slope
// is pinned to 1 (scale identification), so it is a constant, not a field.
struct McmcState {
  double beta0 = 0.0;
  double betaZ = 0.0;
  double betaZbar = 0.0;
  double betaUbar = 0.0;
  Eigen::VectorXd betaC;
  double gamma0 = 0.0;
  Eigen::VectorXd gammaC;
  double sigmaY2 = 1.0;
  double tauU = 1.0;
  double tauZ = 1.0;
  double phiU = 0.5;
  double phiZ = 0.3;
  double rho = 0.0;
  Eigen::VectorXd u;

  static constexpr double betaU = 1.0;

  // Outcome-coefficient block (beta0, betaZ, betaZbar, betaUbar, betaC).
  Eigen::VectorXd eta() const;
  void set_eta(const Eigen::VectorXd& v);
  // Exposure-mean block (gamma0, gammaC).
  Eigen::VectorXd gamma() const;
  void set_gamma(const Eigen::VectorXd& v);
};

// Names of the scalar parameters in storage order, for diagnostics and IO.
std::vector<std::string> state_names(int p);
Eigen::VectorXd state_values(const McmcState& state);
McmcState state_from_values(const Eigen::VectorXd& row, int p);

// Per-dataset precomputations shared by every sweep and chain: the spectrum
// of the degree-normalized adjacency for O(n) determinant and definiteness
// checks, the neighbor-average operator products for the latent-vector
// update, and the fixed pieces of the exposure-mean update.
class ModelWorkspace {
 public:
  explicit ModelWorkspace(const Dataset& data);
  // Decoupled form: the dataset's own adjacency keeps defining the neighbor
  // averages (zbar came from it), while spatial_adj drives the latent and
  // exposure precision matrices.
  ModelWorkspace(const Dataset& data, const AdjacencyStructure& spatial_adj);

  int n() const { return n_; }
  int p() const { return p_; }

  Eigen::VectorXd y, z, zbar;
  Eigen::MatrixXd c;
  Eigen::MatrixXd a;         // dense adjacency view
  Eigen::VectorXd deg;       // row sums of a
  Eigen::VectorXd lambda;    // eigenvalues of D^{-1/2} A D^{-1/2}
  Eigen::MatrixXd navg;      // N = D^{-1} A, the neighbor-average operator
  Eigen::MatrixXd navg_sym;  // N + N^T
  Eigen::MatrixXd navg_gram; // N^T N
  Eigen::MatrixXd w;         // [1 | C]
  Eigen::MatrixXd wt_d_w;    // W^T D W
  Eigen::MatrixXd wt_a_w;    // W^T A W
  Eigen::VectorXd wt_d_z;    // W^T D z
  Eigen::VectorXd wt_a_z;    // W^T A z
  Eigen::MatrixXd wt_d;      // W^T D

  // Outcome design [1 | Z | Zbar | N u | C] at the current latent vector.
  Eigen::MatrixXd outcome_design(const McmcState& state) const;
  // Mean of Y with the latent contribution split off: X_minus eta_minus.
  Eigen::VectorXd outcome_mean_without_u(const McmcState& state) const;
  Eigen::VectorXd exposure_mean(const McmcState& state) const;

 private:
  int n_ = 0;
  int p_ = 0;
};

// True iff the 2x2 spectral blocks of the joint precision are all PD.
bool joint_precision_is_pd(const Eigen::VectorXd& lambda, double phiU, double phiZ, double rho);

// Throws InvalidStateError unless the state satisfies every support
// constraint: positive variances, tauZ inside its prior bounds,
// 0 < phiU < 1, -1 < phiZ < phiU, |rho| < 1, PD joint precision. The
// ordering keeps the latent confounder the smoother of the two fields, so
// the exposure retains variation within levels of the confounder.
void check_state(const McmcState& state, const ModelWorkspace& ws, const PriorConfig& priors);

// Sweep-constant quadratic forms of (u, r = z - W gamma) against D and A.
struct QuadraticForms {
  double u_d_u = 0.0;
  double u_a_u = 0.0;
  double u_d_r = 0.0;
  double r_d_r = 0.0;
  double r_a_r = 0.0;
};
QuadraticForms quadratic_forms(const ModelWorkspace& ws, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& r);

// Log density of (U, Z - W gamma) under the joint spatial model, up to a
// state-independent constant, via the spectral identity. O(n).
double covariance_logdensity(const McmcState& state, const ModelWorkspace& ws,
                             const QuadraticForms& qf);

// Log prior of the five covariance hyperparameters (tauU, tauZ, phiU, phiZ,
// rho), up to constants; support violations are the caller's concern.
double hyper_log_prior(const McmcState& state, const PriorConfig& priors);

// Full log posterior density up to a state-independent constant: outcome
// likelihood + joint (U, Z) | C density + every prior. Dense reference
// implementation; the sampler never calls this in its inner loop.
double log_joint(const McmcState& state, const ModelWorkspace& ws, const PriorConfig& priors);

// Gaussian full conditional in natural parameters: density proportional to
// exp(v' linear - v' precision v / 2).
struct GaussianConditional {
  Eigen::MatrixXd precision;
  Eigen::VectorXd linear;
};

GaussianConditional eta_conditional(const McmcState& state, const ModelWorkspace& ws,
                                    const PriorConfig& priors);
// (shape, rate) of the inverse-gamma full conditional of sigmaY2.
std::pair<double, double> sigma_conditional(const McmcState& state, const ModelWorkspace& ws,
                                            const PriorConfig& priors);
GaussianConditional gamma_conditional(const McmcState& state, const ModelWorkspace& ws,
                                      const PriorConfig& priors);
GaussianConditional u_conditional(const McmcState& state, const ModelWorkspace& ws,
                                  const PriorConfig& priors);

}  // namespace spcausal
