#include "spcausal/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spcausal/errors.hpp"

namespace spcausal {

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("inverse_normal_cdf: p must lie in (0,1)");
  const double q = p - 0.5;
  double r;
  if (std::abs(q) <= 0.425) {
    r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

double quantile_type7(std::vector<double> values, double prob) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(prob >= 0.0 && prob <= 1.0))
    throw std::invalid_argument("quantile: prob must lie in [0,1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - std::floor(h)) * (values[lo + 1] - values[lo]);
}

namespace {

// Average ranks (ties share their midrank), 1-based.
std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t s = values.size();
  std::vector<std::size_t> order(s);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(s);
  std::size_t i = 0;
  while (i < s) {
    std::size_t j = i;
    while (j + 1 < s && values[order[j + 1]] == values[order[i]]) ++j;
    const double mid = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double split_rhat(const std::vector<std::vector<double>>& sequences) {
  if (sequences.size() < 2)
    throw std::invalid_argument("split_rhat: need at least two sequences");
  const std::size_t len = sequences.front().size();
  for (const auto& seq : sequences)
    if (seq.size() != len)
      throw std::invalid_argument("split_rhat: sequences must have equal length");
  if (len < 4) throw std::invalid_argument("split_rhat: need at least 4 draws per sequence");

  // Split each sequence in half; drop the oldest draw first if odd.
  std::vector<std::vector<double>> halves;
  for (const auto& seq : sequences) {
    const std::size_t start = len % 2;
    const std::size_t half = (len - start) / 2;
    halves.emplace_back(seq.begin() + start, seq.begin() + start + half);
    halves.emplace_back(seq.begin() + start + half, seq.end());
  }
  const std::size_t m = halves.size();
  const std::size_t ell = halves.front().size();

  for (const auto& h : halves) {
    const double mean = std::accumulate(h.begin(), h.end(), 0.0) / ell;
    double var = 0.0;
    for (double v : h) var += (v - mean) * (v - mean);
    if (var == 0.0)
      throw DegenerateChainError("split_rhat: a half-sequence has zero variance");
  }

  // Rank-normalize the pooled draws.
  std::vector<double> pooled;
  pooled.reserve(m * ell);
  for (const auto& h : halves) pooled.insert(pooled.end(), h.begin(), h.end());
  const std::vector<double> ranks = average_ranks(pooled);
  const double s = static_cast<double>(pooled.size());
  std::vector<double> zed(pooled.size());
  for (std::size_t i = 0; i < pooled.size(); ++i)
    zed[i] = inverse_normal_cdf((ranks[i] - 0.375) / (s + 0.25));

  // Classic split statistic on the transformed values.
  std::vector<double> means(m), vars(m);
  for (std::size_t j = 0; j < m; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < ell; ++i) mean += zed[j * ell + i];
    mean /= ell;
    double var = 0.0;
    for (std::size_t i = 0; i < ell; ++i) {
      const double d = zed[j * ell + i] - mean;
      var += d * d;
    }
    means[j] = mean;
    vars[j] = var / (ell - 1.0);
  }
  const double grand = std::accumulate(means.begin(), means.end(), 0.0) / m;
  double b = 0.0;
  for (double mu : means) b += (mu - grand) * (mu - grand);
  b *= static_cast<double>(ell) / (m - 1.0);
  const double wvar = std::accumulate(vars.begin(), vars.end(), 0.0) / m;
  const double var_plus = (ell - 1.0) / ell * wvar + b / ell;
  return std::sqrt(var_plus / wvar);
}

std::vector<double> extract_parameter(const PosteriorChain& chain, const std::string& param) {
  if (chain.draws.empty()) throw std::invalid_argument("extract_parameter: empty chain");
  const int p = static_cast<int>(chain.draws.front().betaC.size());
  const auto names = state_names(p);
  const auto it = std::find(names.begin(), names.end(), param);
  if (it == names.end())
    throw std::invalid_argument("extract_parameter: unknown parameter " + param);
  const auto idx = static_cast<Eigen::Index>(it - names.begin());
  std::vector<double> out;
  out.reserve(chain.draws.size());
  for (const auto& s : chain.draws) out.push_back(state_values(s)(idx));
  return out;
}

double split_rhat(const std::vector<PosteriorChain>& chains, const std::string& param) {
  std::vector<std::vector<double>> sequences;
  sequences.reserve(chains.size());
  for (const auto& chain : chains) sequences.push_back(extract_parameter(chain, param));
  return split_rhat(sequences);
}

PosteriorSummary posterior_summary(const std::vector<double>& pooled_draws) {
  if (pooled_draws.size() < 20)
    throw std::invalid_argument("posterior_summary: need at least 20 pooled draws");
  PosteriorSummary s;
  s.mean = std::accumulate(pooled_draws.begin(), pooled_draws.end(), 0.0) /
           static_cast<double>(pooled_draws.size());
  s.lower95 = quantile_type7(pooled_draws, 0.025);
  s.upper95 = quantile_type7(pooled_draws, 0.975);
  return s;
}

PosteriorSummary posterior_summary(const std::vector<PosteriorChain>& chains,
                                   const std::string& param) {
  std::vector<double> pooled;
  for (const auto& chain : chains) {
    const auto draws = extract_parameter(chain, param);
    pooled.insert(pooled.end(), draws.begin(), draws.end());
  }
  return posterior_summary(pooled);
}

}  // namespace spcausal
