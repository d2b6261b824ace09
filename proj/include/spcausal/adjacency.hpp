#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace spcausal {

// Undirected 0/1 neighborhood structure on n units. Immutable once built.
// Sorted neighbor lists are the canonical storage so large unit counts stay
// cheap; the dense matrix view is built on demand for the small-n linear
// algebra paths.
class AdjacencyStructure {
 public:
  AdjacencyStructure(int n, const Eigen::MatrixXd& entries);
  AdjacencyStructure(int n, std::vector<std::vector<int>> neighbor_lists);

  int n() const { return n_; }
  Eigen::MatrixXd matrix() const;
  const Eigen::VectorXd& degrees() const { return degrees_; }
  double degree(int i) const { return degrees_(i); }
  double median_degree() const { return median_degree_; }
  const std::vector<std::vector<int>>& neighbors() const { return neighbors_; }

  bool has_edge(int i, int j) const;

 private:
  void finalize();

  int n_;
  Eigen::VectorXd degrees_;
  double median_degree_ = 0.0;
  std::vector<std::vector<int>> neighbors_;
};

// n_pairs disjoint pairs: block diagonal [[0,1],[1,0]], every degree 1.
AdjacencyStructure pair_adjacency(int n_pairs);

// Path graph 1-2-...-n; end units have degree 1, interior units degree 2.
AdjacencyStructure line_adjacency(int n);

// Symmetric closure of the listed edges; 1-based indices, duplicates coalesced.
AdjacencyStructure from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs);

// Parse "i j" lines (1-based, '#' comments) and build the adjacency.
AdjacencyStructure read_edge_list(const std::string& path, int n);

// Units joined by an edge or by a shared neighbor; diagonal stays clear.
AdjacencyStructure second_degree(const AdjacencyStructure& adj);

// Subgraph on the kept units (0-based, strictly increasing), reindexed to
// 0..keep.size()-1.
AdjacencyStructure induced_subgraph(const AdjacencyStructure& adj,
                                    const std::vector<int>& keep);

// Component i is the mean of v over i's neighbors. Errors on isolated units.
Eigen::VectorXd neighbor_average(const AdjacencyStructure& adj, const Eigen::VectorXd& v);

}  // namespace spcausal
