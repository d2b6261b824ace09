#include "spcausal/chain_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "spcausal/errors.hpp"

namespace spcausal {

namespace {

constexpr char binary_magic[4] = {'S', 'P', 'C', 'H'};
constexpr std::uint32_t binary_version = 1;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int chain_p(const PosteriorChain& chain) {
  if (chain.draws.empty()) throw std::invalid_argument("chain io: empty chain");
  return static_cast<int>(chain.draws.front().betaC.size());
}

}  // namespace

void write_chain_csv(const PosteriorChain& chain, const std::string& path) {
  const int p = chain_p(chain);
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  const auto names = state_names(p);
  for (std::size_t j = 0; j < names.size(); ++j)
    out << names[j] << (j + 1 < names.size() ? "," : "\n");
  for (const auto& state : chain.draws) {
    const Eigen::VectorXd row = state_values(state);
    for (Eigen::Index j = 0; j < row.size(); ++j)
      out << format_double(row(j)) << (j + 1 < row.size() ? "," : "\n");
  }
}

void write_chain_latent_csv(const PosteriorChain& chain, const std::string& path) {
  chain_p(chain);
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  const auto n = chain.draws.front().u.size();
  for (Eigen::Index i = 0; i < n; ++i) out << "u" << i + 1 << (i + 1 < n ? "," : "\n");
  for (const auto& state : chain.draws)
    for (Eigen::Index i = 0; i < n; ++i)
      out << format_double(state.u(i)) << (i + 1 < n ? "," : "\n");
}

PosteriorChain read_chain_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  std::vector<std::string> header;
  {
    std::istringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) header.push_back(field);
  }
  // Column count determines p: 2p + 11 scalar parameters.
  if (header.size() < 11 || (header.size() - 11) % 2 != 0)
    throw ParseError(path + ": unexpected column count");
  const int p = static_cast<int>((header.size() - 11) / 2);
  const auto expected = state_names(p);
  for (std::size_t j = 0; j < expected.size(); ++j)
    if (header[j] != expected[j])
      throw ParseError(path + ": expected column " + expected[j] + ", found " + header[j]);

  PosteriorChain chain;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    Eigen::VectorXd row(header.size());
    std::string field;
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (!std::getline(ss, field, ','))
        throw ParseError(path + ":" + std::to_string(lineno) + ": too few fields");
      try {
        row(static_cast<Eigen::Index>(j)) = std::stod(field);
      } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad number: " + field);
      }
    }
    chain.draws.push_back(state_from_values(row, p));
  }
  return chain;
}

void write_chain_binary(const PosteriorChain& chain, const std::string& path) {
  const int p = chain_p(chain);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open for writing: " + path);

  auto put_u32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
  auto put_u64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
  auto put_f64 = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };

  out.write(binary_magic, 4);
  put_u32(binary_version);
  put_u32(static_cast<std::uint32_t>(p));
  put_u32(static_cast<std::uint32_t>(chain.draws.front().u.size()));
  put_u64(chain.draws.size());
  put_u64(chain.seed);
  put_u32(static_cast<std::uint32_t>(chain.n_iter));
  put_u32(static_cast<std::uint32_t>(chain.n_burnin));
  put_u32(static_cast<std::uint32_t>(chain.thin));
  put_u32(static_cast<std::uint32_t>(chain.acceptance_rates.size()));
  for (double r : chain.acceptance_rates) put_f64(r);
  for (const auto& state : chain.draws) {
    const Eigen::VectorXd row = state_values(state);
    for (Eigen::Index j = 0; j < row.size(); ++j) put_f64(row(j));
    for (Eigen::Index i = 0; i < state.u.size(); ++i) put_f64(state.u(i));
  }
}

PosteriorChain read_chain_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open: " + path);

  auto get_u32 = [&] {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 4);
    return v;
  };
  auto get_u64 = [&] {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  auto get_f64 = [&] {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };

  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, binary_magic, 4) != 0)
    throw ParseError(path + ": not a chain file (bad magic)");
  const std::uint32_t version = get_u32();
  if (version != binary_version)
    throw ParseError(path + ": unsupported version " + std::to_string(version));
  const int p = static_cast<int>(get_u32());
  const int n = static_cast<int>(get_u32());
  const std::uint64_t n_draws = get_u64();

  PosteriorChain chain;
  chain.seed = get_u64();
  chain.n_iter = static_cast<int>(get_u32());
  chain.n_burnin = static_cast<int>(get_u32());
  chain.thin = static_cast<int>(get_u32());
  const std::uint32_t n_rates = get_u32();
  chain.acceptance_rates.resize(n_rates);
  for (auto& r : chain.acceptance_rates) r = get_f64();

  chain.draws.reserve(n_draws);
  for (std::uint64_t d = 0; d < n_draws; ++d) {
    Eigen::VectorXd row(2 * p + 11);
    for (Eigen::Index j = 0; j < row.size(); ++j) row(j) = get_f64();
    McmcState state = state_from_values(row, p);
    state.u.resize(n);
    for (int i = 0; i < n; ++i) state.u(i) = get_f64();
    if (!in) throw ParseError(path + ": truncated draw block");
    chain.draws.push_back(std::move(state));
  }
  return chain;
}

}  // namespace spcausal
