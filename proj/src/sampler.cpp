#include "spcausal/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "spcausal/errors.hpp"
#include "spcausal/ols.hpp"
#include "spcausal/precision.hpp"

namespace spcausal {

namespace {

double logistic(double w) { return 1.0 / (1.0 + std::exp(-w)); }
double logit(double x) { return std::log(x / (1.0 - x)); }

// Support checks for the hyperparameter block, mirroring check_state but
// returning a verdict instead of throwing (proposals just get rejected).
bool hyper_in_support(const McmcState& state, const ModelWorkspace& ws,
                      const PriorConfig& priors) {
  if (!(state.tauU > 0.0) || !(state.tauZ > 0.0)) return false;
  const double vz = 1.0 / state.tauZ;
  if (!(vz >= priors.tauZ_lower && vz <= priors.tauZ_upper)) return false;
  if (!(state.phiU > 0.0 && state.phiU < 1.0)) return false;
  if (!(std::abs(state.phiZ) < 1.0)) return false;
  if (!(std::abs(state.rho) < 1.0)) return false;
  if (!(state.phiZ < state.phiU)) return false;
  return joint_precision_is_pd(ws.lambda, state.phiU, state.phiZ, state.rho);
}

// Covariance term plus hyperparameter priors, no transform Jacobians.
double hyper_log_density(const McmcState& state, const ModelWorkspace& ws,
                         const PriorConfig& priors, const QuadraticForms& qf) {
  return covariance_logdensity(state, ws, qf) + hyper_log_prior(state, priors);
}

struct HyperProposal {
  int block;  // index into AcceptanceCounts slots
  void (*apply)(McmcState&, double);
  double (*read)(const McmcState&);
  // Log-Jacobian of the moved coordinate's transform; each move changes one
  // raw parameter while the other four stay fixed, so only this coordinate's
  // factor enters the acceptance ratio.
  double (*log_jacobian)(const McmcState&);
};

// The five scalar moves on their unconstrained scales.
const HyperProposal hyper_moves[5] = {
    {0, [](McmcState& s, double w) { s.tauU = std::exp(w); },
     [](const McmcState& s) { return std::log(s.tauU); },
     [](const McmcState& s) { return std::log(s.tauU); }},
    {1, [](McmcState& s, double w) { s.tauZ = std::exp(w); },
     [](const McmcState& s) { return std::log(s.tauZ); },
     [](const McmcState& s) { return std::log(s.tauZ); }},
    {2, [](McmcState& s, double w) { s.phiU = logistic(w); },
     [](const McmcState& s) { return logit(s.phiU); },
     [](const McmcState& s) { return std::log(s.phiU) + std::log1p(-s.phiU); }},
    {3, [](McmcState& s, double w) { s.phiZ = 2.0 * logistic(w) - 1.0; },
     [](const McmcState& s) { return logit(0.5 * (s.phiZ + 1.0)); },
     [](const McmcState& s) {
       const double x = 0.5 * (s.phiZ + 1.0);
       return std::log(x) + std::log1p(-x);
     }},
    {4, [](McmcState& s, double w) { s.rho = std::tanh(w); },
     [](const McmcState& s) { return std::atanh(s.rho); },
     [](const McmcState& s) { return std::log1p(-s.rho * s.rho); }},
};

double step_for(const McmcTuning& t, int block) {
  switch (block) {
    case 0: return t.step_log_tauU;
    case 1: return t.step_log_tauZ;
    case 2: return t.step_logit_phiU;
    case 3: return t.step_logit_phiZ;
    default: return t.step_atanh_rho;
  }
}

double& step_ref(McmcTuning& t, int block) {
  switch (block) {
    case 0: return t.step_log_tauU;
    case 1: return t.step_log_tauZ;
    case 2: return t.step_logit_phiU;
    case 3: return t.step_logit_phiZ;
    default: return t.step_atanh_rho;
  }
}

}  // namespace

Eigen::VectorXd sample_gaussian(const GaussianConditional& fc, SeededRng& rng) {
  const Eigen::MatrixXd l = checked_cholesky(fc.precision, "full conditional");
  Eigen::VectorXd mean = l.triangularView<Eigen::Lower>().solve(fc.linear);
  mean = l.transpose().triangularView<Eigen::Upper>().solve(mean);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd w(fc.linear.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = gauss(rng.engine);
  return mean + l.transpose().triangularView<Eigen::Upper>().solve(w);
}

void mcmc_step(McmcState& state, const ModelWorkspace& ws, const PriorConfig& priors,
               const McmcTuning& tuning, SeededRng& rng, AcceptanceCounts* counts) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;

  // Outcome coefficients.
  state.set_eta(sample_gaussian(eta_conditional(state, ws, priors), rng));

  // Residual variance.
  {
    const auto [shape, rate] = sigma_conditional(state, ws, priors);
    std::gamma_distribution<double> gamma_draw(shape, 1.0);
    state.sigmaY2 = rate / gamma_draw(rng.engine);
  }

  // Exposure-mean coefficients.
  state.set_gamma(sample_gaussian(gamma_conditional(state, ws, priors), rng));

  // Latent confounder vector.
  state.u = sample_gaussian(u_conditional(state, ws, priors), rng);

  // Covariance hyperparameters, one random-walk move each.
  const Eigen::VectorXd r = ws.z - ws.exposure_mean(state);
  const QuadraticForms qf = quadratic_forms(ws, state.u, r);
  double current_density = hyper_log_density(state, ws, priors, qf);
  for (const auto& move : hyper_moves) {
    const double step = step_for(tuning, move.block);
    if (step <= 0.0) continue;  // block explicitly frozen
    if (counts) ++counts->proposals[move.block];
    McmcState proposal = state;
    move.apply(proposal, move.read(state) + step * gauss(rng.engine));
    if (!hyper_in_support(proposal, ws, priors)) continue;
    const double proposed_density = hyper_log_density(proposal, ws, priors, qf);
    const double log_ratio = proposed_density - current_density +
                             move.log_jacobian(proposal) - move.log_jacobian(state);
    if (std::log(unif(rng.engine)) < log_ratio) {
      state = std::move(proposal);
      current_density = proposed_density;
      if (counts) ++counts->accepts[move.block];
    }
  }
}

McmcState initial_state(const ModelWorkspace& ws, const PriorConfig& priors, SeededRng& rng) {
  const int p = ws.p();
  McmcState state;
  state.betaC.resize(p);
  state.gammaC.resize(p);

  // Coefficient blocks from preliminary OLS fits.
  {
    Eigen::MatrixXd x(ws.n(), 3 + p);
    x.col(0).setOnes();
    x.col(1) = ws.z;
    x.col(2) = ws.zbar;
    if (p > 0) x.rightCols(p) = ws.c;
    const auto fit = fit_ols(ws.y, x);
    state.beta0 = fit.coefficients(0);
    state.betaZ = fit.coefficients(1);
    state.betaZbar = fit.coefficients(2);
    if (p > 0) state.betaC = fit.coefficients.tail(p);
  }
  state.betaUbar = 0.0;
  {
    const auto fit = fit_ols(ws.z, ws.w);
    state.gamma0 = fit.coefficients(0);
    if (p > 0) state.gammaC = fit.coefficients.tail(p);
  }

  state.sigmaY2 = std::max(priors.sigma2_y_hat, 1e-6);
  state.tauU = 1.0 / std::sqrt(priors.tauU_scale);
  state.tauZ = 1.0 / priors.tauZ_center;
  state.phiU = 0.3;
  state.phiZ = 0.5;
  state.rho = 0.0;
  state.u = Eigen::VectorXd::Zero(ws.n());

  // Seed-dependent jitter of about one prior sd per coordinate, keeping the
  // state inside every support constraint.
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const double coef_sd = std::sqrt(priors.sigma2_prior);
  state.beta0 += coef_sd * unif(rng.engine);
  state.betaZ += coef_sd * unif(rng.engine);
  state.betaZbar += coef_sd * unif(rng.engine);
  state.betaUbar += std::sqrt(priors.sigma2_prior_ubar) * unif(rng.engine);
  for (int j = 0; j < p; ++j) state.betaC(j) += coef_sd * unif(rng.engine);
  state.gamma0 += coef_sd * unif(rng.engine);
  for (int j = 0; j < p; ++j) state.gammaC(j) += coef_sd * unif(rng.engine);
  state.sigmaY2 *= std::exp(0.5 * unif(rng.engine));
  state.tauU *= std::exp(0.5 * unif(rng.engine));
  {
    const double lo = priors.tauZ_lower, hi = priors.tauZ_upper;
    double vz = priors.tauZ_center * std::exp(0.3 * unif(rng.engine));
    const double margin = 0.01 * (hi - lo);
    vz = std::min(std::max(vz, lo + margin), hi - margin);
    state.tauZ = 1.0 / vz;
  }
  state.phiZ = 0.5 + 0.25 * unif(rng.engine);
  state.phiU = state.phiZ * (0.5 + 0.3 * unif(rng.engine));
  state.rho = 0.3 * unif(rng.engine);
  while (!joint_precision_is_pd(ws.lambda, state.phiU, state.phiZ, state.rho))
    state.rho *= 0.5;

  check_state(state, ws, priors);
  return state;
}

PosteriorChain run_chain(const ModelWorkspace& ws, const PriorConfig& priors, int n_iter,
                         int n_burnin, int thin, std::uint64_t seed,
                         const McmcTuning& tuning) {
  if (n_iter <= n_burnin)
    throw std::invalid_argument("run_chain: n_iter must exceed n_burnin");
  if (thin < 1) throw std::invalid_argument("run_chain: thin must be >= 1");

  SeededRng rng = make_rng(seed);
  McmcState state = initial_state(ws, priors, rng);
  McmcTuning adapted = tuning;

  PosteriorChain chain;
  chain.seed = seed;
  chain.n_iter = n_iter;
  chain.n_burnin = n_burnin;
  chain.thin = thin;
  chain.draws.reserve((n_iter - n_burnin) / thin);

  AcceptanceCounts warm, frozen;
  for (int t = 1; t <= n_iter; ++t) {
    const bool burnin = t <= n_burnin;
    AcceptanceCounts before = burnin ? warm : frozen;
    mcmc_step(state, ws, priors, adapted, rng, burnin ? &warm : &frozen);
    if (burnin) {
      // Robbins-Monro drift of each log step size toward the target rate.
      const double gain = std::pow(static_cast<double>(t), -0.6);
      for (int b = 0; b < 5; ++b) {
        const long made = warm.proposals[b] - before.proposals[b];
        if (made == 0) continue;
        const double acc = static_cast<double>(warm.accepts[b] - before.accepts[b]);
        double& step = step_ref(adapted, b);
        step = std::exp(std::log(step) + gain * (acc - tuning.target_accept));
        step = std::min(std::max(step, 1e-3), 10.0);
      }
    } else if ((t - n_burnin) % thin == 0) {
      chain.draws.push_back(state);
    }
  }

  chain.acceptance_rates.resize(5);
  for (int b = 0; b < 5; ++b)
    chain.acceptance_rates[b] =
        frozen.proposals[b] > 0
            ? static_cast<double>(frozen.accepts[b]) / frozen.proposals[b]
            : 0.0;
  return chain;
}

}  // namespace spcausal
