#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "spcausal/adjacency.hpp"
#include "spcausal/errors.hpp"

using namespace spcausal;

TEST_CASE("pair adjacency") {
  auto a1 = pair_adjacency(1);
  CHECK(a1.n() == 2);
  CHECK(a1.matrix()(0, 1) == 1.0);
  CHECK(a1.matrix()(1, 0) == 1.0);
  CHECK(a1.degree(0) == 1.0);
  CHECK(a1.degree(1) == 1.0);

  auto a2 = pair_adjacency(2);
  CHECK(a2.n() == 4);
  CHECK(a2.matrix()(0, 2) == 0.0);
  CHECK(a2.matrix()(2, 3) == 1.0);

  CHECK(pair_adjacency(100).median_degree() == 1.0);
  CHECK_THROWS_AS(pair_adjacency(0), std::invalid_argument);
  CHECK_THROWS_AS(pair_adjacency(-3), std::invalid_argument);
}

TEST_CASE("line adjacency") {
  auto a = line_adjacency(3);
  CHECK(a.degree(0) == 1.0);
  CHECK(a.degree(1) == 2.0);
  CHECK(a.degree(2) == 1.0);
  CHECK(line_adjacency(100).median_degree() == 2.0);
  CHECK(line_adjacency(2).matrix() == pair_adjacency(1).matrix());
  CHECK_THROWS_AS(line_adjacency(1), std::invalid_argument);
}

TEST_CASE("edge list construction") {
  auto a = from_edge_list(3, {{1, 2}});
  CHECK(a.degree(0) == 1.0);
  CHECK(a.degree(1) == 1.0);
  CHECK(a.degree(2) == 0.0);

  auto b = from_edge_list(3, {{1, 2}, {2, 1}});
  CHECK(b.degree(1) == 1.0);  // duplicates coalesce

  CHECK_THROWS_AS(from_edge_list(2, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(from_edge_list(2, {{1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(from_edge_list(2, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("edge list file parsing") {
  const char* path = "test_edges_tmp.txt";
  {
    std::ofstream out(path);
    out << "# county adjacency sample\n";
    out << "1 2\n";
    out << "  2 3\n";
    out << "\n";
    out << "3 1\n";
  }
  auto a = read_edge_list(path, 4);
  CHECK(a.degree(0) == 2.0);
  CHECK(a.degree(1) == 2.0);
  CHECK(a.degree(2) == 2.0);
  CHECK(a.degree(3) == 0.0);
  std::remove(path);

  {
    std::ofstream out(path);
    out << "1 two\n";
  }
  CHECK_THROWS_AS(read_edge_list(path, 4), ParseError);
  std::remove(path);
  CHECK_THROWS_AS(read_edge_list("no_such_file.txt", 4), ParseError);
}

TEST_CASE("second degree expansion") {
  auto line4 = second_degree(line_adjacency(4));
  CHECK(line4.has_edge(0, 2));
  CHECK(!line4.has_edge(0, 3));
  CHECK(line4.has_edge(0, 1));  // original edges kept

  auto pairs = pair_adjacency(3);
  CHECK(second_degree(pairs).matrix() == pairs.matrix());

  auto complete3 = from_edge_list(3, {{1, 2}, {1, 3}, {2, 3}});
  CHECK(second_degree(complete3).matrix() == complete3.matrix());
}

TEST_CASE("second degree is monotone") {
  std::mt19937_64 rng(42);
  std::bernoulli_distribution edge(0.15);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 12;
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (edge(rng)) edges.emplace_back(i, j);
    auto a = from_edge_list(n, edges);
    auto sq = second_degree(a);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (a.has_edge(i, j)) CHECK(sq.has_edge(i, j));
  }
}

TEST_CASE("neighbor average") {
  Eigen::VectorXd v(2);
  v << 1.0, 0.0;
  auto avg = neighbor_average(pair_adjacency(1), v);
  CHECK(avg(0) == 0.0);
  CHECK(avg(1) == 1.0);

  Eigen::VectorXd w(3);
  w << 1.0, 0.0, 1.0;
  auto avg3 = neighbor_average(line_adjacency(3), w);
  CHECK(avg3(0) == 0.0);
  CHECK(avg3(1) == 1.0);
  CHECK(avg3(2) == 0.0);

  Eigen::VectorXd c = Eigen::VectorXd::Constant(5, 3.25);
  auto avgc = neighbor_average(line_adjacency(5), c);
  for (int i = 0; i < 5; ++i) CHECK(avgc(i) == doctest::Approx(3.25).epsilon(1e-15));

  auto isolated = from_edge_list(3, {{1, 2}});
  Eigen::VectorXd u = Eigen::VectorXd::Ones(3);
  CHECK_THROWS_AS(neighbor_average(isolated, u), IsolatedUnitError);
}

TEST_CASE("neighbor average is linear") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  auto adj = from_edge_list(
      10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 10}, {1, 10}, {2, 8}});
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::VectorXd u(10), v(10);
    for (int i = 0; i < 10; ++i) {
      u(i) = gauss(rng);
      v(i) = gauss(rng);
    }
    const double alpha = gauss(rng), beta = gauss(rng);
    Eigen::VectorXd lhs = neighbor_average(adj, alpha * u + beta * v);
    Eigen::VectorXd rhs = alpha * neighbor_average(adj, u) + beta * neighbor_average(adj, v);
    const double scale = rhs.norm() + 1.0;
    CHECK((lhs - rhs).norm() / scale < 1e-12);
  }
}

TEST_CASE("adjacency validation") {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 1) = 1.0;  // asymmetric
  CHECK_THROWS_AS(AdjacencyStructure(2, bad), std::invalid_argument);
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = 1.0;
  CHECK_THROWS_AS(AdjacencyStructure(2, diag), std::invalid_argument);
  Eigen::MatrixXd frac = Eigen::MatrixXd::Zero(2, 2);
  frac(0, 1) = frac(1, 0) = 0.5;
  CHECK_THROWS_AS(AdjacencyStructure(2, frac), std::invalid_argument);
}
