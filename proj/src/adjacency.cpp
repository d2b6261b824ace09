#include "spcausal/adjacency.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "spcausal/errors.hpp"

namespace spcausal {

namespace {

double median_of(Eigen::VectorXd v) {
  std::sort(v.data(), v.data() + v.size());
  const auto n = v.size();
  if (n % 2 == 1) return v(n / 2);
  return 0.5 * (v(n / 2 - 1) + v(n / 2));
}

}  // namespace

AdjacencyStructure::AdjacencyStructure(int n, const Eigen::MatrixXd& entries) : n_(n) {
  if (n <= 0) throw std::invalid_argument("adjacency: n must be positive");
  if (entries.rows() != n || entries.cols() != n)
    throw std::invalid_argument("adjacency: matrix dimension does not match n");
  for (int i = 0; i < n; ++i) {
    if (entries(i, i) != 0.0)
      throw std::invalid_argument("adjacency: diagonal must be zero");
    for (int j = 0; j < i; ++j) {
      const double a = entries(i, j);
      if (a != 0.0 && a != 1.0)
        throw std::invalid_argument("adjacency: entries must be 0 or 1");
      if (a != entries(j, i))
        throw std::invalid_argument("adjacency: matrix must be symmetric");
    }
  }
  neighbors_.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (entries(i, j) != 0.0) neighbors_[i].push_back(j);
  finalize();
}

AdjacencyStructure::AdjacencyStructure(int n, std::vector<std::vector<int>> neighbor_lists)
    : n_(n), neighbors_(std::move(neighbor_lists)) {
  if (n <= 0) throw std::invalid_argument("adjacency: n must be positive");
  if (static_cast<int>(neighbors_.size()) != n)
    throw std::invalid_argument("adjacency: neighbor list count does not match n");
  for (int i = 0; i < n; ++i) {
    auto& nb = neighbors_[i];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    for (int j : nb) {
      if (j < 0 || j >= n)
        throw std::invalid_argument("adjacency: neighbor index out of range");
      if (j == i)
        throw std::invalid_argument("adjacency: self-loop at unit " + std::to_string(i + 1));
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j : neighbors_[i])
      if (!std::binary_search(neighbors_[j].begin(), neighbors_[j].end(), i))
        throw std::invalid_argument("adjacency: neighbor lists are not symmetric");
  finalize();
}

void AdjacencyStructure::finalize() {
  degrees_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    auto& nb = neighbors_[i];
    std::sort(nb.begin(), nb.end());
    degrees_(i) = static_cast<double>(nb.size());
  }
  median_degree_ = median_of(degrees_);
}

Eigen::MatrixXd AdjacencyStructure::matrix() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j : neighbors_[i]) a(i, j) = 1.0;
  return a;
}

bool AdjacencyStructure::has_edge(int i, int j) const {
  const auto& nb = neighbors_[i];
  return std::binary_search(nb.begin(), nb.end(), j);
}

AdjacencyStructure pair_adjacency(int n_pairs) {
  if (n_pairs < 1) throw std::invalid_argument("pair_adjacency: n_pairs must be >= 1");
  const int n = 2 * n_pairs;
  std::vector<std::vector<int>> nb(n);
  for (int p = 0; p < n_pairs; ++p) {
    nb[2 * p] = {2 * p + 1};
    nb[2 * p + 1] = {2 * p};
  }
  return AdjacencyStructure(n, std::move(nb));
}

AdjacencyStructure line_adjacency(int n) {
  if (n < 2) throw std::invalid_argument("line_adjacency: n must be >= 2");
  std::vector<std::vector<int>> nb(n);
  for (int i = 0; i + 1 < n; ++i) {
    nb[i].push_back(i + 1);
    nb[i + 1].push_back(i);
  }
  return AdjacencyStructure(n, std::move(nb));
}

AdjacencyStructure from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs) {
  if (n < 1) throw std::invalid_argument("from_edge_list: n must be positive");
  std::vector<std::vector<int>> nb(n);
  for (const auto& [i1, j1] : pairs) {
    if (i1 < 1 || i1 > n || j1 < 1 || j1 > n)
      throw std::invalid_argument("from_edge_list: index out of range 1.." + std::to_string(n));
    if (i1 == j1)
      throw std::invalid_argument("from_edge_list: self-loop at unit " + std::to_string(i1));
    nb[i1 - 1].push_back(j1 - 1);
    nb[j1 - 1].push_back(i1 - 1);
  }
  return AdjacencyStructure(n, std::move(nb));
}

AdjacencyStructure read_edge_list(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list: " + path);
  std::vector<std::pair<int, int>> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    int i = 0, j = 0;
    if (!(ss >> i >> j))
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected \"i j\"");
    pairs.emplace_back(i, j);
  }
  return from_edge_list(n, pairs);
}

AdjacencyStructure second_degree(const AdjacencyStructure& adj) {
  const int n = adj.n();
  std::vector<std::vector<int>> out(n);
  std::vector<char> mark(n, 0);
  for (int i = 0; i < n; ++i) {
    std::vector<int> touched;
    for (int j : adj.neighbors()[i]) {
      if (!mark[j]) {
        mark[j] = 1;
        touched.push_back(j);
      }
      for (int k : adj.neighbors()[j]) {
        if (k != i && !mark[k]) {
          mark[k] = 1;
          touched.push_back(k);
        }
      }
    }
    out[i] = touched;
    for (int j : touched) mark[j] = 0;
  }
  return AdjacencyStructure(n, std::move(out));
}

AdjacencyStructure induced_subgraph(const AdjacencyStructure& adj,
                                    const std::vector<int>& keep) {
  const int m = static_cast<int>(keep.size());
  if (m < 1) throw std::invalid_argument("induced_subgraph: keep set is empty");
  std::vector<int> new_index(adj.n(), -1);
  for (int r = 0; r < m; ++r) {
    const int i = keep[r];
    if (i < 0 || i >= adj.n())
      throw std::invalid_argument("induced_subgraph: index out of range");
    if (new_index[i] != -1)
      throw std::invalid_argument("induced_subgraph: duplicate index");
    if (r > 0 && keep[r - 1] >= i)
      throw std::invalid_argument("induced_subgraph: keep set must be increasing");
    new_index[i] = r;
  }
  std::vector<std::vector<int>> nb(m);
  for (int r = 0; r < m; ++r)
    for (int j : adj.neighbors()[keep[r]])
      if (new_index[j] != -1) nb[r].push_back(new_index[j]);
  return AdjacencyStructure(m, std::move(nb));
}

Eigen::VectorXd neighbor_average(const AdjacencyStructure& adj, const Eigen::VectorXd& v) {
  if (v.size() != adj.n())
    throw std::invalid_argument("neighbor_average: vector length does not match n");
  Eigen::VectorXd out(adj.n());
  for (int i = 0; i < adj.n(); ++i) {
    const auto& nb = adj.neighbors()[i];
    if (nb.empty())
      throw IsolatedUnitError("neighbor_average: unit " + std::to_string(i + 1) +
                              " has no neighbors");
    double s = 0.0;
    for (int j : nb) s += v(j);
    out(i) = s / static_cast<double>(nb.size());
  }
  return out;
}

}  // namespace spcausal
