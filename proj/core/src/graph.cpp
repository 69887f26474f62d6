#include "distaut/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "distaut/errors.hpp"

namespace distaut {

LabeledGraph::LabeledGraph(std::vector<std::string> alphabet, std::vector<std::string> ids,
                           std::vector<std::string> labels, std::vector<Edge> edges)
    : alphabet_(std::move(alphabet)),
      ids_(std::move(ids)),
      labels_(std::move(labels)),
      edges_(std::move(edges)) {
  if (ids_.size() != labels_.size()) {
    throw DomainError("graph: " + std::to_string(ids_.size()) + " ids but " +
                      std::to_string(labels_.size()) + " labels");
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : ids_) {
    if (!seen.insert(id).second) throw DomainError("graph: duplicate node id '" + id + "'");
  }
  const auto n = ids_.size();
  std::vector<std::size_t> degree(n, 0);
  for (auto& [u, v] : edges_) {
    if (u >= n || v >= n) throw DomainError("graph: edge refers to a missing node");
    if (u > v) std::swap(u, v);
    ++degree[u];
    if (u != v) ++degree[v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adjacency_[fill[u]++] = v;
    if (u != v) adjacency_[fill[v]++] = u;
  }
}

std::span<const NodeIndex> LabeledGraph::neighbors(NodeIndex v) const {
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool LabeledGraph::adjacent(NodeIndex u, NodeIndex v) const {
  auto nb = neighbors(u);
  return std::find(nb.begin(), nb.end(), v) != nb.end();
}

std::optional<NodeIndex> LabeledGraph::find(std::string_view id) const {
  for (NodeIndex v = 0; v < ids_.size(); ++v) {
    if (ids_[v] == id) return v;
  }
  return std::nullopt;
}

bool LabeledGraph::operator==(const LabeledGraph& other) const {
  return alphabet_ == other.alphabet_ && ids_ == other.ids_ && labels_ == other.labels_ &&
         edges_ == other.edges_;
}

bool is_connected(const LabeledGraph& g) {
  const auto n = g.node_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<NodeIndex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

std::vector<std::string> validate(const LabeledGraph& g) {
  std::vector<std::string> out;
  if (g.node_count() < 2) out.emplace_back("fewer than 2 nodes");
  std::set<Edge> seen;
  for (const auto& e : g.edges()) {
    if (e.first == e.second) {
      out.push_back("self-loop at '" + g.id(e.first) + "'");
    } else if (!seen.insert(e).second) {
      out.push_back("duplicate edge '" + g.id(e.first) + "'-'" + g.id(e.second) + "'");
    }
  }
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    const auto& a = g.alphabet();
    if (std::find(a.begin(), a.end(), g.label(v)) == a.end()) {
      out.push_back("label '" + g.label(v) + "' of '" + g.id(v) + "' is not in the alphabet");
    }
  }
  if (g.node_count() >= 2 && !is_connected(g)) out.emplace_back("not connected");
  return out;
}

void require_valid(const LabeledGraph& g) {
  auto violations = validate(g);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

bool has_odd_cycle(const LabeledGraph& g) {
  const auto n = g.node_count();
  std::vector<int> side(n, -1);
  for (NodeIndex s = 0; s < n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::vector<NodeIndex> stack{s};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : g.neighbors(v)) {
        if (side[w] == -1) {
          side[w] = 1 - side[v];
          stack.push_back(w);
        } else if (side[w] == side[v]) {
          return true;
        }
      }
    }
  }
  return false;
}

namespace {

std::vector<std::string> first_appearance(const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  return out;
}

std::vector<std::string> numbered_ids(std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));
  return ids;
}

}  // namespace

LabeledGraph make_graph(std::vector<std::string> labels, std::vector<Edge> edges,
                        std::vector<std::string> alphabet) {
  if (alphabet.empty()) alphabet = first_appearance(labels);
  auto ids = numbered_ids(labels.size());
  return LabeledGraph(std::move(alphabet), std::move(ids), std::move(labels), std::move(edges));
}

LabeledGraph unlabeled(std::size_t n, std::vector<Edge> edges) {
  return make_graph(std::vector<std::string>(n, std::string(kUnlabeled)), std::move(edges));
}

LabeledGraph relabel(const LabeledGraph& g, std::vector<std::string> labels,
                     std::vector<std::string> alphabet) {
  if (labels.size() != g.node_count()) throw DomainError("relabel: wrong number of labels");
  if (alphabet.empty()) alphabet = first_appearance(labels);
  return LabeledGraph(std::move(alphabet), g.ids(), std::move(labels), g.edges());
}

LabeledGraph generate_star(std::size_t leaves, std::string label) {
  if (leaves < 1) throw DomainError("star needs at least one leaf");
  std::vector<std::string> ids{"c"};
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) {
    ids.push_back("l" + std::to_string(i));
    edges.emplace_back(0, static_cast<NodeIndex>(i));
  }
  std::vector<std::string> labels(leaves + 1, label);
  return LabeledGraph({label}, std::move(ids), std::move(labels), std::move(edges));
}

LabeledGraph generate_cycle(std::vector<std::string> labels) {
  const auto n = labels.size();
  if (n < 3) throw DomainError("cycle needs at least 3 nodes");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(static_cast<NodeIndex>(i), static_cast<NodeIndex>((i + 1) % n));
  }
  return make_graph(std::move(labels), std::move(edges));
}

LabeledGraph generate_cycle(std::size_t n) {
  return generate_cycle(std::vector<std::string>(n, std::string(kUnlabeled)));
}

LabeledGraph generate_path(std::vector<std::string> labels) {
  const auto n = labels.size();
  if (n < 2) throw DomainError("path needs at least 2 nodes");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.emplace_back(static_cast<NodeIndex>(i), static_cast<NodeIndex>(i + 1));
  }
  return make_graph(std::move(labels), std::move(edges));
}

LabeledGraph generate_path(std::size_t n) {
  return generate_path(std::vector<std::string>(n, std::string(kUnlabeled)));
}

LabeledGraph generate_complete(std::vector<std::string> labels) {
  const auto n = labels.size();
  if (n < 2) throw DomainError("complete graph needs at least 2 nodes");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.emplace_back(static_cast<NodeIndex>(i), static_cast<NodeIndex>(j));
    }
  }
  return make_graph(std::move(labels), std::move(edges));
}

LabeledGraph generate_complete(std::size_t n) {
  return generate_complete(std::vector<std::string>(n, std::string(kUnlabeled)));
}

LabeledGraph kronecker_cover(const LabeledGraph& g) {
  const auto n = static_cast<NodeIndex>(g.node_count());
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  for (int side = 0; side < 2; ++side) {
    for (NodeIndex v = 0; v < n; ++v) {
      ids.push_back(g.id(v) + "#" + std::to_string(side));
      labels.push_back(g.label(v));
    }
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    edges.emplace_back(u, v + n);
    edges.emplace_back(v, u + n);
  }
  return LabeledGraph(g.alphabet(), std::move(ids), std::move(labels), std::move(edges));
}

LabeledGraph chain_construction(const LabeledGraph& g, const LabeledGraph& h, std::size_t t,
                                Edge g_anchor, Edge h_anchor) {
  if (t < 1) throw DomainError("chain construction needs t >= 1");
  auto check_anchor = [](const LabeledGraph& x, Edge a, const char* name) {
    if (a.first >= x.node_count() || a.second >= x.node_count() ||
        !x.adjacent(a.first, a.second)) {
      throw DomainError(std::string("chain construction: ") + name +
                        " anchor is not a pair of adjacent nodes");
    }
  };
  check_anchor(g, g_anchor, "G");
  check_anchor(h, h_anchor, "H");

  std::vector<std::string> alphabet = g.alphabet();
  for (const auto& a : h.alphabet()) {
    if (std::find(alphabet.begin(), alphabet.end(), a) == alphabet.end()) alphabet.push_back(a);
  }
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  // Copy i of X starts at base(X, i).
  const auto ng = static_cast<NodeIndex>(g.node_count());
  const auto nh = static_cast<NodeIndex>(h.node_count());
  auto base_g = [&](std::size_t i) { return static_cast<NodeIndex>((i - 1) * ng); };
  auto base_h = [&](std::size_t i) { return static_cast<NodeIndex>(t * ng + (i - 1) * nh); };

  auto add_copies = [&](const LabeledGraph& x, const char* tag, auto base) {
    for (std::size_t i = 1; i <= t; ++i) {
      for (NodeIndex v = 0; v < x.node_count(); ++v) {
        ids.push_back(x.id(v) + "@" + tag + std::to_string(i));
        labels.push_back(x.label(v));
      }
      for (const auto& [u, v] : x.edges()) edges.emplace_back(base(i) + u, base(i) + v);
    }
  };
  add_copies(g, "G", base_g);
  add_copies(h, "H", base_h);
  for (std::size_t i = 1; i < t; ++i) {
    edges.emplace_back(base_g(i) + g_anchor.first, base_g(i + 1) + g_anchor.second);
    edges.emplace_back(base_h(i) + h_anchor.first, base_h(i + 1) + h_anchor.second);
  }
  edges.emplace_back(base_g(t) + g_anchor.first, base_h(t) + h_anchor.first);
  return LabeledGraph(std::move(alphabet), std::move(ids), std::move(labels), std::move(edges));
}

namespace {

struct IsoSearch {
  const LabeledGraph& g;
  const LabeledGraph& h;
  std::vector<NodeIndex> order;
  std::vector<int> map;      // g -> h
  std::vector<char> used;    // h nodes taken

  bool extend(std::size_t k) {
    if (k == order.size()) return true;
    const auto v = order[k];
    for (NodeIndex w = 0; w < h.node_count(); ++w) {
      if (used[w] || h.label(w) != g.label(v) || h.degree(w) != g.degree(v)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        const auto u = order[j];
        ok = g.adjacent(u, v) == h.adjacent(static_cast<NodeIndex>(map[u]), w);
      }
      if (!ok) continue;
      map[v] = static_cast<int>(w);
      used[w] = 1;
      if (extend(k + 1)) return true;
      used[w] = 0;
      map[v] = -1;
    }
    return false;
  }
};

}  // namespace

bool isomorphic(const LabeledGraph& g, const LabeledGraph& h, std::size_t max_nodes) {
  if (g.node_count() > max_nodes || h.node_count() > max_nodes) {
    throw TooLarge("isomorphism check limited to " + std::to_string(max_nodes) + " nodes");
  }
  if (g.node_count() != h.node_count() || g.edge_count() != h.edge_count()) return false;
  auto sorted_labels = [](const LabeledGraph& x) {
    auto l = x.labels();
    std::sort(l.begin(), l.end());
    return l;
  };
  if (sorted_labels(g) != sorted_labels(h)) return false;
  auto degrees = [](const LabeledGraph& x) {
    std::vector<std::size_t> d;
    for (NodeIndex v = 0; v < x.node_count(); ++v) d.push_back(x.degree(v));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degrees(g) != degrees(h)) return false;

  IsoSearch search{g, h, {}, std::vector<int>(g.node_count(), -1),
                   std::vector<char>(h.node_count(), 0)};
  // BFS order keeps each new node adjacent to mapped ones, which prunes early.
  std::vector<char> seen(g.node_count(), 0);
  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::size_t head = search.order.size();
    search.order.push_back(s);
    while (head < search.order.size()) {
      auto v = search.order[head++];
      for (auto w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          search.order.push_back(w);
        }
      }
    }
  }
  return search.extend(0);
}

std::vector<LabeledGraph> enumerate_connected_graphs(std::size_t max_nodes,
                                                     std::size_t min_nodes) {
  if (max_nodes > 6) throw TooLarge("graph enumeration limited to 6 nodes");
  std::vector<LabeledGraph> out;
  for (std::size_t n = std::max<std::size_t>(min_nodes, 2); n <= max_nodes; ++n) {
    std::vector<Edge> pairs;
    std::vector<std::vector<int>> pair_index(n, std::vector<int>(n, -1));
    for (NodeIndex i = 0; i < n; ++i) {
      for (NodeIndex j = i + 1; j < n; ++j) {
        pair_index[i][j] = pair_index[j][i] = static_cast<int>(pairs.size());
        pairs.emplace_back(i, j);
      }
    }
    std::vector<std::vector<NodeIndex>> perms;
    std::vector<NodeIndex> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    std::unordered_set<std::uint32_t> canon_seen;
    const std::uint32_t total = 1u << pairs.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) + 1 < n) continue;
      std::vector<Edge> edges;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (mask >> k & 1u) edges.push_back(pairs[k]);
      }
      auto candidate = unlabeled(n, edges);
      if (!is_connected(candidate)) continue;
      std::uint32_t canon = mask;
      for (const auto& perm : perms) {
        std::uint32_t m = 0;
        for (const auto& [a, b] : edges) m |= 1u << pair_index[perm[a]][perm[b]];
        canon = std::min(canon, m);
      }
      if (canon != mask) continue;  // keep the canonical representative only
      if (canon_seen.insert(canon).second) out.push_back(std::move(candidate));
    }
  }
  return out;
}

std::vector<LabeledGraph> all_labelings(const LabeledGraph& g,
                                        const std::vector<std::string>& alphabet) {
  if (alphabet.empty()) throw DomainError("all_labelings: empty alphabet");
  const auto n = g.node_count();
  std::vector<std::size_t> digits(n, 0);
  std::vector<LabeledGraph> out;
  while (true) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = alphabet[digits[i]];
    out.push_back(LabeledGraph(alphabet, g.ids(), std::move(labels), g.edges()));
    std::size_t i = 0;
    while (i < n && ++digits[i] == alphabet.size()) digits[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace distaut
