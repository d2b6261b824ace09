#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "spcausal/scenario_dag.hpp"

using namespace spcausal;
using enum Node;

namespace {

const std::vector<std::string> kScenarios = {"2a", "2b", "2c", "2d", "2e", "2f", "full"};

std::set<std::pair<Node, Node>> edge_set(const ScenarioDag& dag) {
  return {dag.directed_edges.begin(), dag.directed_edges.end()};
}

bool subset(const std::set<std::pair<Node, Node>>& a, const std::set<std::pair<Node, Node>>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("scenario edge sets match the figures") {
  auto s2a = build_scenario("2a");
  CHECK(s2a.has_edge(U1, Z1));
  CHECK(s2a.has_edge(U1, Y1));
  CHECK(!s2a.has_edge(Z2, Y1));
  CHECK(!s2a.has_edge(U1, Y2));

  auto s2b = build_scenario("2b");
  CHECK(s2b.has_edge(Z2, Y1));
  CHECK(!s2b.has_edge(U1, Z1));

  auto full = build_scenario("full");
  for (const auto& id : kScenarios) {
    auto dag = build_scenario(id);
    CHECK(subset(edge_set(dag), edge_set(full)));
  }

  CHECK_THROWS_AS(build_scenario("3a"), std::invalid_argument);
}

TEST_CASE("scenario subset lattice") {
  auto e = [](const std::string& id) { return edge_set(build_scenario(id)); };
  CHECK(subset(e("2a"), e("2c")));
  CHECK(subset(e("2c"), e("2f")));
  CHECK(subset(e("2b"), e("2e")));
  CHECK(subset(e("2e"), e("2f")));
  CHECK(subset(e("2d"), e("2f")));
  CHECK(e("2f") == e("full"));
}

TEST_CASE("latent roots compile the chain edges") {
  auto both = build_scenario("2a", true, true);
  CHECK(both.has_edge(Uu, U1));
  CHECK(both.has_edge(Uu, U2));
  CHECK(both.has_edge(Zu, Z1));
  CHECK(both.has_edge(Zu, Z2));
  CHECK(both.parents(Uu).empty());
  CHECK(both.parents(Zu).empty());

  auto no_u = build_scenario("2a", true, false);
  CHECK(!no_u.has_node(Uu));
  CHECK(no_u.has_node(Zu));
  auto no_z = build_scenario("2a", false, true);
  CHECK(!no_z.has_node(Zu));

  for (const auto& id : kScenarios) {
    auto dag = build_scenario(id);
    CHECK(dag.parents(Uu).empty());
    CHECK(dag.parents(Zu).empty());
  }
}

TEST_CASE("d-separation in scenario 2a") {
  auto dag = build_scenario("2a");
  CHECK(!d_separated(dag, Z2, Y1, {Z1}));
  CHECK(d_separated(dag, Z2, Y1, {Z1, U1}));
}

TEST_CASE("latent roots are mutually separated") {
  for (const auto& id : kScenarios) {
    auto dag = build_scenario(id);
    CHECK(d_separated(dag, Uu, Zu, {}));
  }
}

TEST_CASE("query validation") {
  auto dag = build_scenario("2a");
  CHECK_THROWS_AS(d_separated(dag, Z1, Y1, {Uu}), std::invalid_argument);
  CHECK_THROWS_AS(d_separated(dag, Z1, Y1, {Zu}), std::invalid_argument);
  CHECK_THROWS_AS(d_separated(dag, Z1, Y1, {Z1}), std::invalid_argument);
  auto no_u = build_scenario("2a", true, false);
  CHECK_THROWS_AS(d_separated(no_u, Uu, Z1, {}), std::invalid_argument);
}

TEST_CASE("reachability agrees with exhaustive trail enumeration everywhere") {
  const std::vector<Node> observable = {U1, U2, Z1, Z2, Y1, Y2};
  long checked = 0;
  for (const auto& id : kScenarios) {
    for (bool z_spatial : {true, false}) {
      for (bool u_spatial : {true, false}) {
        auto dag = build_scenario(id, z_spatial, u_spatial);
        for (Node x : dag.nodes) {
          for (Node y : dag.nodes) {
            if (x == y) continue;
            std::vector<Node> pool;
            for (Node c : observable)
              if (c != x && c != y) pool.push_back(c);
            for (unsigned mask = 0; mask < (1u << pool.size()); ++mask) {
              std::vector<Node> cond;
              for (std::size_t b = 0; b < pool.size(); ++b)
                if (mask & (1u << b)) cond.push_back(pool[b]);
              const bool fast = d_separated(dag, x, y, cond);
              const bool brute = d_separated_by_enumeration(dag, x, y, cond);
              REQUIRE(fast == brute);
              ++checked;
            }
          }
        }
      }
    }
  }
  CHECK(checked > 10000);
}

namespace {

// Draw one coefficient assignment, sample the linear-Gaussian model implied by
// the DAG, and return the magnitude of the partial correlation of (x, y) given
// cond, estimated from n samples.
double partial_correlation(const ScenarioDag& dag, Node x, Node y, const std::vector<Node>& cond,
                           int n, std::mt19937_64& rng) {
  // Topological order: latent roots, then U, then Z, then Y.
  const std::vector<Node> order = {Uu, Zu, U1, U2, Z1, Z2, Y1, Y2};
  std::uniform_real_distribution<double> mag(0.5, 1.5);
  std::bernoulli_distribution sign(0.5);
  std::normal_distribution<double> gauss;

  std::vector<std::vector<double>> coef(8, std::vector<double>(8, 0.0));
  for (const auto& [from, to] : dag.directed_edges)
    coef[static_cast<int>(from)][static_cast<int>(to)] = (sign(rng) ? 1.0 : -1.0) * mag(rng);

  std::vector<std::vector<double>> samples(8, std::vector<double>(n, 0.0));
  for (int s = 0; s < n; ++s) {
    for (Node v : order) {
      if (!dag.has_node(v)) continue;
      const int vi = static_cast<int>(v);
      double val = gauss(rng);
      for (Node p : dag.parents(v)) val += coef[static_cast<int>(p)][vi] * samples[static_cast<int>(p)][s];
      samples[vi][s] = val;
    }
  }

  // Residualize x and y on (1, cond) via normal equations, then correlate.
  const int k = static_cast<int>(cond.size()) + 1;
  Eigen::MatrixXd w(n, k);
  for (int s = 0; s < n; ++s) {
    w(s, 0) = 1.0;
    for (int j = 0; j < k - 1; ++j) w(s, j + 1) = samples[static_cast<int>(cond[j])][s];
  }
  Eigen::VectorXd vx(n), vy(n);
  for (int s = 0; s < n; ++s) {
    vx(s) = samples[static_cast<int>(x)][s];
    vy(s) = samples[static_cast<int>(y)][s];
  }
  Eigen::MatrixXd wtw = w.transpose() * w;
  Eigen::VectorXd rx = vx - w * wtw.ldlt().solve(w.transpose() * vx);
  Eigen::VectorXd ry = vy - w * wtw.ldlt().solve(w.transpose() * vy);
  return std::abs(rx.dot(ry) / std::sqrt(rx.squaredNorm() * ry.squaredNorm()));
}

}  // namespace

TEST_CASE("d-separation implies near-zero partial correlation") {
  const int n = 100000;
  const double threshold = 3.0 * 4.0 / std::sqrt(static_cast<double>(n));
  std::mt19937_64 rng(20240817);

  // Collect d-separated triples across scenarios, then verify numerically.
  struct Query {
    std::string id;
    Node x, y;
    std::vector<Node> cond;
  };
  std::vector<Query> queries;
  const std::vector<Node> observable = {U1, U2, Z1, Z2, Y1, Y2};
  for (const auto& id : kScenarios) {
    auto dag = build_scenario(id);
    for (Node x : observable) {
      for (Node y : observable) {
        if (static_cast<int>(x) >= static_cast<int>(y)) continue;
        std::vector<Node> pool;
        for (Node c : observable)
          if (c != x && c != y) pool.push_back(c);
        for (unsigned mask = 0; mask < (1u << pool.size()); ++mask) {
          std::vector<Node> cond;
          for (std::size_t b = 0; b < pool.size(); ++b)
            if (mask & (1u << b)) cond.push_back(pool[b]);
          if (d_separated(dag, x, y, cond)) queries.push_back({id, x, y, cond});
        }
      }
    }
  }
  REQUIRE(!queries.empty());

  // Subsample the query list to keep the runtime reasonable; each selected
  // query is tested over several random coefficient draws.
  std::shuffle(queries.begin(), queries.end(), rng);
  const std::size_t n_queries = std::min<std::size_t>(queries.size(), 25);
  int total = 0, within = 0;
  for (std::size_t qi = 0; qi < n_queries; ++qi) {
    const auto& q = queries[qi];
    auto dag = build_scenario(q.id);
    for (int draw = 0; draw < 8; ++draw) {
      const double pc = partial_correlation(dag, q.x, q.y, q.cond, n, rng);
      ++total;
      if (pc < threshold) ++within;
    }
  }
  CHECK(static_cast<double>(within) / total >= 0.95);
}

TEST_CASE("backdoor paths in scenario 2a") {
  auto dag = build_scenario("2a");
  auto report = backdoor_paths(dag, Z2, Y1, {});

  // The classical enumeration lists three trails; the raw DAG also carries a
  // fourth (through the U chain into Z1 then on to Y1).
  std::vector<std::string> rendered;
  for (const auto& p : report.paths) rendered.push_back(p.rendered);
  auto find = [&](const std::string& s) {
    return std::find(rendered.begin(), rendered.end(), s) != rendered.end();
  };
  CHECK(find("Z2 <- U2 - U1 -> Y1"));
  CHECK(find("Z2 - Z1 <- U1 -> Y1"));
  CHECK(find("Z2 - Z1 -> Y1"));
  CHECK(find("Z2 <- U2 - U1 -> Z1 -> Y1"));
  CHECK(report.paths.size() == 4);

  for (const auto& p : report.paths) {
    if (p.rendered == "Z2 - Z1 <- U1 -> Y1") {
      CHECK(!p.open);
      CHECK(p.blocking_reason == "collider Z1 unconditioned");
    } else {
      CHECK(p.open);
      CHECK(p.blocking_reason.empty());
    }
  }
}

TEST_CASE("conditioning on Z1 opens the collider path") {
  auto dag = build_scenario("2a");
  auto report = backdoor_paths(dag, Z2, Y1, {Z1});
  for (const auto& p : report.paths) {
    if (p.rendered == "Z2 - Z1 <- U1 -> Y1") CHECK(p.open);
    if (p.rendered == "Z2 - Z1 -> Y1") {
      CHECK(!p.open);
      CHECK(p.blocking_reason == "chain Z1 conditioned");
    }
  }
  CHECK(!d_separated(dag, Z2, Y1, {Z1}));
}

TEST_CASE("backdoor paths in scenario 2b close under neighbor adjustment") {
  auto dag = build_scenario("2b");
  auto report = backdoor_paths(dag, Z1, Y1, {Z2});
  int open = 0;
  for (const auto& p : report.paths)
    if (p.open) ++open;
  CHECK(open == 0);
}

TEST_CASE("backdoor paths in scenario 2e show interference as confounding") {
  auto dag = build_scenario("2e");
  auto report = backdoor_paths(dag, Z1, Y1, {});
  bool found = false;
  for (const auto& p : report.paths)
    if (p.rendered == "Z1 - Z2 -> Y1") {
      found = true;
      CHECK(p.open);
    }
  CHECK(found);
}

TEST_CASE("backdoor trails all start with an edge into the treatment") {
  for (const auto& id : kScenarios) {
    auto dag = build_scenario(id);
    for (Node t : {Z1, Z2}) {
      for (Node o : {Y1, Y2}) {
        auto report = backdoor_paths(dag, t, o, {});
        for (const auto& p : report.paths) {
          REQUIRE(p.nodes.size() >= 2);
          CHECK(p.nodes.front() == t);
          CHECK(p.nodes.back() == o);
          CHECK(dag.has_edge(p.nodes[1], p.nodes[0]));
        }
      }
    }
  }
}
