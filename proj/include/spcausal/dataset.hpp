#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

#include "spcausal/adjacency.hpp"

namespace spcausal {

// One generated or loaded sample. The latent confounder columns are retained
// when known so that oracle conditioning sets can be fit against the truth.
struct Dataset {
  AdjacencyStructure adjacency;
  Eigen::VectorXd y, z, zbar;
  Eigen::MatrixXd c;  // n x p measured covariates
  std::optional<Eigen::VectorXd> u, ubar;
  std::uint64_t seed = 0;

  explicit Dataset(AdjacencyStructure adj) : adjacency(std::move(adj)) {}

  int n() const { return adjacency.n(); }
  int p() const { return static_cast<int>(c.cols()); }
};

// Header y,z,zbar,c1..cp[,u,ubar]; 17 significant digits, so values
// round-trip bit for bit. The adjacency goes to a sidecar edge-list file.
void write_dataset_csv(const Dataset& data, const std::string& data_path,
                       const std::string& edges_path);
Dataset read_dataset_csv(const std::string& data_path, const std::string& edges_path);

}  // namespace spcausal
