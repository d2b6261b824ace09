#include "spcausal/scenario_dag.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <stdexcept>

namespace spcausal {

namespace {

constexpr std::array<Node, 8> kAllNodes = {Node::U1, Node::U2, Node::Z1, Node::Z2,
                                           Node::Y1, Node::Y2, Node::Uu, Node::Zu};

bool is_latent_root(Node n) { return n == Node::Uu || n == Node::Zu; }

bool contains(const std::vector<Node>& v, Node n) {
  return std::find(v.begin(), v.end(), n) != v.end();
}

// Ancestors of the given set, the set itself included.
std::set<Node> ancestral_closure(const ScenarioDag& dag, const std::vector<Node>& base) {
  std::set<Node> anc(base.begin(), base.end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [from, to] : dag.directed_edges) {
      if (anc.count(to) && !anc.count(from)) {
        anc.insert(from);
        grew = true;
      }
    }
  }
  return anc;
}

void check_query(const ScenarioDag& dag, Node x, Node y, const std::vector<Node>& cond) {
  if (!dag.has_node(x) || !dag.has_node(y))
    throw std::invalid_argument("d-separation query: node absent from this scenario");
  for (Node c : cond) {
    if (is_latent_root(c))
      throw std::invalid_argument("d-separation query: cannot condition on latent root " +
                                  node_name(c));
    if (c == x || c == y)
      throw std::invalid_argument("d-separation query: endpoints cannot be conditioned on");
    if (!dag.has_node(c))
      throw std::invalid_argument("d-separation query: conditioning node absent from scenario");
  }
}

}  // namespace

std::string node_name(Node n) {
  switch (n) {
    case Node::U1: return "U1";
    case Node::U2: return "U2";
    case Node::Z1: return "Z1";
    case Node::Z2: return "Z2";
    case Node::Y1: return "Y1";
    case Node::Y2: return "Y2";
    case Node::Uu: return "Uu";
    case Node::Zu: return "Zu";
  }
  throw std::invalid_argument("node_name: unknown node");
}

Node parse_node(const std::string& name) {
  for (Node n : kAllNodes)
    if (node_name(n) == name) return n;
  throw std::invalid_argument("unknown node name: " + name);
}

bool ScenarioDag::has_node(Node n) const { return contains(nodes, n); }

bool ScenarioDag::has_edge(Node from, Node to) const {
  return std::find(directed_edges.begin(), directed_edges.end(), std::make_pair(from, to)) !=
         directed_edges.end();
}

std::vector<Node> ScenarioDag::parents(Node n) const {
  std::vector<Node> out;
  for (const auto& [from, to] : directed_edges)
    if (to == n) out.push_back(from);
  return out;
}

std::vector<Node> ScenarioDag::children(Node n) const {
  std::vector<Node> out;
  for (const auto& [from, to] : directed_edges)
    if (from == n) out.push_back(to);
  return out;
}

ScenarioDag build_scenario(const std::string& scenario_id, bool inherent_z_spatial,
                           bool inherent_u_spatial) {
  using enum Node;
  std::vector<std::pair<Node, Node>> edges;
  const auto add = [&edges](Node a, Node b) { edges.emplace_back(a, b); };

  // Directed arrows of each subfigure. The chain edges are added below from
  // the spatial flags, which every scenario draws.
  if (scenario_id == "2a") {
    add(U1, Z1); add(U2, Z2); add(U1, Y1); add(U2, Y2); add(Z1, Y1); add(Z2, Y2);
  } else if (scenario_id == "2b") {
    add(Z1, Y1); add(Z2, Y2); add(Z1, Y2); add(Z2, Y1);
  } else if (scenario_id == "2c") {
    add(U1, Z1); add(U2, Z2); add(U1, Y1); add(U2, Y2); add(Z1, Y1); add(Z2, Y2);
    add(U1, Y2); add(U2, Y1);
  } else if (scenario_id == "2d") {
    add(U1, Z1); add(U2, Z2); add(U1, Y1); add(U2, Y2); add(Z1, Y1); add(Z2, Y2);
    add(Z1, Y2); add(Z2, Y1);
  } else if (scenario_id == "2e") {
    add(U1, Z1); add(U2, Z2); add(Z1, Y1); add(Z2, Y2); add(Z1, Y2); add(Z2, Y1);
  } else if (scenario_id == "2f" || scenario_id == "full") {
    add(U1, Z1); add(U2, Z2); add(U1, Y1); add(U2, Y2); add(Z1, Y1); add(Z2, Y2);
    add(Z1, Y2); add(Z2, Y1); add(U1, Y2); add(U2, Y1);
  } else {
    throw std::invalid_argument("build_scenario: unknown scenario id \"" + scenario_id + "\"");
  }

  ScenarioDag dag;
  dag.scenario_id = scenario_id;
  dag.nodes = {U1, U2, Z1, Z2, Y1, Y2};
  if (inherent_u_spatial) {
    dag.nodes.push_back(Uu);
    add(Uu, U1); add(Uu, U2);
  }
  if (inherent_z_spatial) {
    dag.nodes.push_back(Zu);
    add(Zu, Z1); add(Zu, Z2);
  }
  dag.directed_edges = std::move(edges);
  return dag;
}

bool d_separated(const ScenarioDag& dag, Node x, Node y, const std::vector<Node>& cond) {
  check_query(dag, x, y, cond);
  const std::set<Node> observed(cond.begin(), cond.end());
  const std::set<Node> anc = ancestral_closure(dag, cond);

  // Reachability over (node, arrival direction) states. from_child means the
  // last edge was traversed child-to-parent.
  enum Dir { from_child, from_parent };
  std::set<std::pair<Node, int>> visited;
  std::deque<std::pair<Node, int>> queue;
  queue.emplace_back(x, from_child);
  while (!queue.empty()) {
    auto [v, dir] = queue.front();
    queue.pop_front();
    if (!visited.insert({v, dir}).second) continue;
    if (v == y) return false;
    if (dir == from_child) {
      if (!observed.count(v)) {
        for (Node p : dag.parents(v)) queue.emplace_back(p, from_child);
        for (Node c : dag.children(v)) queue.emplace_back(c, from_parent);
      }
    } else {
      if (!observed.count(v))
        for (Node c : dag.children(v)) queue.emplace_back(c, from_parent);
      if (anc.count(v))
        for (Node p : dag.parents(v)) queue.emplace_back(p, from_child);
    }
  }
  return true;
}

namespace {

// Enumerate simple trails between two nodes over the edge skeleton.
void collect_trails(const ScenarioDag& dag, Node at, Node goal, std::vector<Node>& trail,
                    std::vector<std::vector<Node>>& out) {
  if (at == goal) {
    out.push_back(trail);
    return;
  }
  for (Node next : kAllNodes) {
    if (!dag.has_node(next) || contains(trail, next)) continue;
    if (!dag.has_edge(at, next) && !dag.has_edge(next, at)) continue;
    trail.push_back(next);
    collect_trails(dag, next, goal, trail, out);
    trail.pop_back();
  }
}

struct TrailVerdict {
  bool open;
  std::string reason;  // empty when open
};

// Apply the blocking rules along one trail.
TrailVerdict classify_trail(const ScenarioDag& dag, const std::vector<Node>& trail,
                            const std::vector<Node>& cond) {
  const std::set<Node> observed(cond.begin(), cond.end());
  const std::set<Node> anc = ancestral_closure(dag, cond);
  for (std::size_t i = 1; i + 1 < trail.size(); ++i) {
    const Node prev = trail[i - 1], v = trail[i], next = trail[i + 1];
    const bool in_from_prev = dag.has_edge(prev, v);
    const bool in_from_next = dag.has_edge(next, v);
    if (in_from_prev && in_from_next) {
      if (!anc.count(v))
        return {false, "collider " + node_name(v) + " unconditioned"};
    } else if (observed.count(v)) {
      const bool fork = !in_from_prev && !in_from_next;
      return {false, std::string(fork ? "fork " : "chain ") + node_name(v) + " conditioned"};
    }
  }
  return {true, ""};
}

// Collapsed rendering: a latent root between its two children prints as the
// original undirected edge, e.g. "U2 - U1".
std::string render_trail(const ScenarioDag& dag, const std::vector<Node>& trail) {
  std::string out = node_name(trail.front());
  for (std::size_t i = 1; i < trail.size(); ++i) {
    if (is_latent_root(trail[i]) && i + 1 < trail.size()) {
      // Skip the root: render the far child joined by the undirected edge.
      out += " - " + node_name(trail[i + 1]);
      ++i;
      continue;
    }
    out += (dag.has_edge(trail[i - 1], trail[i]) ? " -> " : " <- ") + node_name(trail[i]);
  }
  return out;
}

}  // namespace

bool d_separated_by_enumeration(const ScenarioDag& dag, Node x, Node y,
                                const std::vector<Node>& cond) {
  check_query(dag, x, y, cond);
  std::vector<std::vector<Node>> trails;
  std::vector<Node> trail = {x};
  collect_trails(dag, x, y, trail, trails);
  for (const auto& t : trails)
    if (classify_trail(dag, t, cond).open) return false;
  return true;
}

PathReport backdoor_paths(const ScenarioDag& dag, Node treatment, Node outcome,
                          const std::vector<Node>& cond) {
  if (treatment == outcome)
    throw std::invalid_argument("backdoor_paths: treatment equals outcome");
  check_query(dag, treatment, outcome, cond);
  PathReport report;
  report.treatment = treatment;
  report.outcome = outcome;
  report.conditioning = cond;

  std::vector<std::vector<Node>> trails;
  std::vector<Node> trail = {treatment};
  collect_trails(dag, treatment, outcome, trail, trails);
  for (const auto& t : trails) {
    if (t.size() < 2 || !dag.has_edge(t[1], t[0])) continue;  // must start into treatment
    TrailReport tr;
    tr.nodes = t;
    const auto verdict = classify_trail(dag, t, cond);
    tr.open = verdict.open;
    tr.blocking_reason = verdict.reason;
    tr.rendered = render_trail(dag, t);
    report.paths.push_back(std::move(tr));
  }
  return report;
}

}  // namespace spcausal
