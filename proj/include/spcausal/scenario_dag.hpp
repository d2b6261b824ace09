#pragma once

#include <string>
#include <utility>
#include <vector>

namespace spcausal {

// Two-unit scenario graphs. The undirected chain-graph edges U1 - U2 and
// Z1 - Z2 are compiled to latent common parents Uu and Zu, which can never
// be conditioned on.
enum class Node { U1, U2, Z1, Z2, Y1, Y2, Uu, Zu };

std::string node_name(Node n);
Node parse_node(const std::string& name);

struct ScenarioDag {
  std::string scenario_id;  // one of 2a..2f, full
  std::vector<Node> nodes;
  std::vector<std::pair<Node, Node>> directed_edges;

  bool has_node(Node n) const;
  bool has_edge(Node from, Node to) const;
  std::vector<Node> parents(Node n) const;
  std::vector<Node> children(Node n) const;
};

struct TrailReport {
  std::vector<Node> nodes;      // raw trail, latent roots included
  bool open = false;
  std::string rendered;         // collapsed notation, e.g. "Z2 <- U2 - U1 -> Y1"
  std::string blocking_reason;  // empty when open
};

struct PathReport {
  Node treatment;
  Node outcome;
  std::vector<Node> conditioning;
  std::vector<TrailReport> paths;
};

// Edge set of the cited subfigure; a false spatial flag removes the
// corresponding latent root and its edges.
ScenarioDag build_scenario(const std::string& scenario_id, bool inherent_z_spatial = true,
                           bool inherent_u_spatial = true);

// True iff every trail between x and y is blocked given cond.
bool d_separated(const ScenarioDag& dag, Node x, Node y, const std::vector<Node>& cond);

// Same question answered by exhaustive trail enumeration. Exponential, but the
// scenario graphs have at most 8 nodes; kept as an independent cross-check.
bool d_separated_by_enumeration(const ScenarioDag& dag, Node x, Node y,
                                const std::vector<Node>& cond);

// Every trail from treatment to outcome that starts with an edge into the
// treatment, each classified as open or blocked given cond.
PathReport backdoor_paths(const ScenarioDag& dag, Node treatment, Node outcome,
                          const std::vector<Node>& cond);

}  // namespace spcausal
