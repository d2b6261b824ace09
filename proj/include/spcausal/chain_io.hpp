#pragma once

#include <string>

#include "spcausal/sampler.hpp"

namespace spcausal {

// One row per stored state, one column per scalar parameter; the latent
// vector goes to its own wide CSV on request. Values print with enough
// digits to round-trip doubles exactly.
void write_chain_csv(const PosteriorChain& chain, const std::string& path);
void write_chain_latent_csv(const PosteriorChain& chain, const std::string& path);
PosteriorChain read_chain_csv(const std::string& path);

// Compact binary format with a magic tag and version header; stores the
// scalar parameters, the latent vectors, and the chain metadata.
void write_chain_binary(const PosteriorChain& chain, const std::string& path);
PosteriorChain read_chain_binary(const std::string& path);

}  // namespace spcausal
