#pragma once

#include <string>
#include <vector>

#include "spcausal/sampler.hpp"

namespace spcausal {

// Inverse standard normal CDF (Wichura's AS 241 rational approximation,
// accurate to about 1e-15 on (0,1)).
double inverse_normal_cdf(double p);

// Type-7 quantile (linear interpolation of order statistics) of a sample.
double quantile_type7(std::vector<double> values, double prob);

// Rank-normalized split R-hat over raw per-chain sequences of equal length.
// Each sequence is halved, pooled ranks are mapped through the normal
// quantile function, and the classic between/within ratio is computed on the
// transformed values. Throws DegenerateChainError if any half-sequence has
// zero variance.
double split_rhat(const std::vector<std::vector<double>>& sequences);

// Convenience overload extracting a named scalar parameter from each chain.
double split_rhat(const std::vector<PosteriorChain>& chains, const std::string& param);

struct PosteriorSummary {
  double mean = 0.0;
  double lower95 = 0.0;
  double upper95 = 0.0;
};

// Pooled posterior mean and equal-tailed 95% interval for a named parameter.
PosteriorSummary posterior_summary(const std::vector<PosteriorChain>& chains,
                                   const std::string& param);
PosteriorSummary posterior_summary(const std::vector<double>& pooled_draws);

// Draws of one scalar parameter in storage order.
std::vector<double> extract_parameter(const PosteriorChain& chain, const std::string& param);

}  // namespace spcausal
