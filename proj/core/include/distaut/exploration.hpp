#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "distaut/engine.hpp"
#include "distaut/machine.hpp"

namespace distaut {

using NodeMask = std::uint64_t;
using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = UINT32_MAX;

// A finite transition system over fixed-width state vectors whose edges can
// be enumerated by index. Edge i of configuration c is only meaningful
// after prepare(c, aux), which may cache per-configuration data in aux.
class TransitionSystem {
 public:
  virtual ~TransitionSystem() = default;
  virtual std::size_t width() const = 0;
  virtual std::size_t aux_width() const = 0;
  virtual std::size_t node_count() const = 0;
  virtual void initial(StateId* out) const = 0;
  virtual std::uint32_t prepare(const StateId* c, StateId* aux) const = 0;
  // Writes successor i and returns the union of all selections that realize it.
  virtual NodeMask successor(const StateId* c, const StateId* aux, std::uint32_t i,
                             StateId* out) const = 0;
  // One concrete selection for edge i, containing a node of `want` when possible.
  virtual Selection realize(const StateId* c, const StateId* aux, std::uint32_t i,
                            NodeMask want) const = 0;
  virtual bool accepting(const StateId* c) const = 0;
  virtual bool rejecting(const StateId* c) const = 0;
};

// Machine M on graph G under a selection kind. Liberal edges are grouped by
// target: the successor that applies exactly the changing nodes in T is
// realized by T plus any subset of the nodes whose update is a no-op.
class MachineSystem : public TransitionSystem {
 public:
  MachineSystem(const Machine& m, const LabeledGraph& g, SelectionKind kind);
  std::size_t width() const override { return n_; }
  std::size_t aux_width() const override { return n_; }
  std::size_t node_count() const override { return n_; }
  void initial(StateId* out) const override;
  std::uint32_t prepare(const StateId* c, StateId* aux) const override;
  NodeMask successor(const StateId* c, const StateId* aux, std::uint32_t i,
                     StateId* out) const override;
  Selection realize(const StateId* c, const StateId* aux, std::uint32_t i,
                    NodeMask want) const override;
  bool accepting(const StateId* c) const override;
  bool rejecting(const StateId* c) const override;

  const Machine& machine() const { return m_; }
  const LabeledGraph& graph() const { return g_; }
  SelectionKind kind() const { return kind_; }

 private:
  const Machine& m_;
  const LabeledGraph& g_;
  SelectionKind kind_;
  std::size_t n_;
  std::vector<StateId> init_;
  mutable BoundedMultiset scratch_;
};

// Flat arena of configurations with an open-addressing index.
class ConfigStore {
 public:
  explicit ConfigStore(std::size_t width);
  std::pair<VertexId, bool> insert(const StateId* c);
  VertexId find(const StateId* c) const;  // kNoVertex if absent
  const StateId* get(VertexId v) const { return arena_.data() + static_cast<std::size_t>(v) * width_; }
  std::size_t size() const { return count_; }
  std::size_t width() const { return width_; }
  Configuration configuration(VertexId v) const;

 private:
  std::uint64_t hash(const StateId* c) const;
  void grow();

  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<StateId> arena_;
  std::vector<VertexId> slots_;
  std::size_t mask_ = 0;
};

struct Component {
  std::size_t size = 0;
  bool bottom = true;             // no edge leaves the component
  NodeMask cover = 0;             // union of selections over internal edges
  bool internal_edge = false;
  VertexId non_accepting = kNoVertex;  // some member that is not accepting
  VertexId non_rejecting = kNoVertex;  // some member that is not rejecting
};

struct Exploration {
  explicit Exploration(std::size_t width) : store(width) {}
  ConfigStore store;
  std::vector<VertexId> scc;          // component id per vertex
  std::vector<VertexId> parent;       // DFS tree parent, kNoVertex at the root
  std::vector<std::uint32_t> parent_edge;
  std::vector<Component> components;
  std::size_t edges = 0;
};

// Explores everything reachable from the initial configuration and splits it
// into strongly connected components. Throws TooLarge past max_vertices.
Exploration explore(const TransitionSystem& ts, std::size_t max_vertices);

// Shortest path (as edge indices) from `from` to `to` using only vertices of
// `from`'s component. Empty when from == to and require_step is false.
std::vector<std::pair<VertexId, std::uint32_t>> path_within_component(
    const TransitionSystem& ts, const Exploration& ex, VertexId from, VertexId to,
    bool require_step);

}  // namespace distaut
