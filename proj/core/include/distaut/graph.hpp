#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace distaut {

using NodeIndex = std::uint32_t;
using Edge = std::pair<NodeIndex, NodeIndex>;

// Label used for graphs whose labels carry no information.
inline constexpr std::string_view kUnlabeled = "·";

// Finite undirected graph with one label per node. Node order is the
// declaration order and is what configurations are indexed by.
//
// The constructor only rejects things that cannot be represented at all
// (duplicate ids, edges to unknown nodes). Self-loops, duplicate edges,
// foreign labels and disconnectedness are reported by validate().
class LabeledGraph {
 public:
  LabeledGraph() = default;
  LabeledGraph(std::vector<std::string> alphabet, std::vector<std::string> ids,
               std::vector<std::string> labels, std::vector<Edge> edges);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& id(NodeIndex v) const { return ids_[v]; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& label(NodeIndex v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const NodeIndex> neighbors(NodeIndex v) const;
  std::size_t degree(NodeIndex v) const { return neighbors(v).size(); }
  bool adjacent(NodeIndex u, NodeIndex v) const;
  std::optional<NodeIndex> find(std::string_view id) const;

  bool operator==(const LabeledGraph& other) const;

 private:
  std::vector<std::string> alphabet_;
  std::vector<std::string> ids_;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeIndex> adjacency_;
};

// Empty result means the graph is a valid input graph.
std::vector<std::string> validate(const LabeledGraph& g);
void require_valid(const LabeledGraph& g);
bool is_connected(const LabeledGraph& g);
bool has_odd_cycle(const LabeledGraph& g);

// Alphabet defaults to the labels in first-appearance order.
LabeledGraph make_graph(std::vector<std::string> labels, std::vector<Edge> edges,
                        std::vector<std::string> alphabet = {});
LabeledGraph unlabeled(std::size_t n, std::vector<Edge> edges);
LabeledGraph relabel(const LabeledGraph& g, std::vector<std::string> labels,
                     std::vector<std::string> alphabet = {});

LabeledGraph generate_star(std::size_t leaves, std::string label = std::string(kUnlabeled));
LabeledGraph generate_cycle(std::vector<std::string> labels);
LabeledGraph generate_cycle(std::size_t n);
LabeledGraph generate_path(std::vector<std::string> labels);
LabeledGraph generate_path(std::size_t n);
LabeledGraph generate_complete(std::vector<std::string> labels);
LabeledGraph generate_complete(std::size_t n);

// Bipartite double cover: nodes V x {0,1}, edges {(u,i),(v,1-i)}.
LabeledGraph kronecker_cover(const LabeledGraph& g);

// t copies G_1..G_t and H_1..H_t. With anchors (u,v) adjacent in each
// graph, adds u_i -- v_{i+1} inside each chain and the bridge u^G_t -- u^H_t.
// Copies are named "<id>@G<i>" and "<id>@H<i>".
LabeledGraph chain_construction(const LabeledGraph& g, const LabeledGraph& h, std::size_t t,
                                Edge g_anchor, Edge h_anchor);

// Label-preserving isomorphism by backtracking. Throws TooLarge past the cap.
bool isomorphic(const LabeledGraph& g, const LabeledGraph& h, std::size_t max_nodes = 10);

// Connected unlabeled graphs with min_nodes..max_nodes nodes, one per
// isomorphism class. Throws TooLarge for max_nodes > 6.
std::vector<LabeledGraph> enumerate_connected_graphs(std::size_t max_nodes,
                                                     std::size_t min_nodes = 2);

// Every labeling of g's nodes by the given alphabet, in odometer order.
std::vector<LabeledGraph> all_labelings(const LabeledGraph& g,
                                        const std::vector<std::string>& alphabet);

}  // namespace distaut
