#include "distaut/exploration.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <deque>
#include <unordered_map>

#include "distaut/errors.hpp"

namespace distaut {

MachineSystem::MachineSystem(const Machine& m, const LabeledGraph& g, SelectionKind kind)
    : m_(m), g_(g), kind_(kind), n_(g.node_count()), scratch_(m.beta()) {
  if (n_ > 64) throw TooLarge("exact decision is limited to graphs with 64 nodes");
  init_ = initial_configuration(m, g).states();
}

void MachineSystem::initial(StateId* out) const {
  std::copy(init_.begin(), init_.end(), out);
}

std::uint32_t MachineSystem::prepare(const StateId* c, StateId* aux) const {
  std::uint32_t changing = 0;
  for (NodeIndex v = 0; v < n_; ++v) {
    scratch_.clear();
    for (auto w : g_.neighbors(v)) scratch_.add(c[w]);
    aux[v] = m_.next(c[v], scratch_);
    if (aux[v] != c[v]) ++changing;
  }
  switch (kind_) {
    case SelectionKind::Liberal:
      if (changing > 24) throw TooLarge("more than 2^24 liberal successors of one configuration");
      return 1u << changing;
    case SelectionKind::Exclusive:
      return changing + (changing < n_ ? 1u : 0u);
    case SelectionKind::Synchronous:
      return 1;
  }
  return 0;
}

NodeMask MachineSystem::successor(const StateId* c, const StateId* aux, std::uint32_t i,
                                  StateId* out) const {
  std::copy(c, c + n_, out);
  NodeMask mask = 0;
  switch (kind_) {
    case SelectionKind::Liberal: {
      std::uint32_t j = 0;
      for (NodeIndex v = 0; v < n_; ++v) {
        if (aux[v] == c[v]) {
          mask |= NodeMask{1} << v;
        } else {
          if (i >> j & 1u) {
            out[v] = aux[v];
            mask |= NodeMask{1} << v;
          }
          ++j;
        }
      }
      return mask;
    }
    case SelectionKind::Exclusive: {
      std::uint32_t j = 0;
      for (NodeIndex v = 0; v < n_; ++v) {
        if (aux[v] == c[v]) {
          mask |= NodeMask{1} << v;
        } else if (j++ == i) {
          out[v] = aux[v];
          return NodeMask{1} << v;
        }
      }
      return mask;  // the self-loop: any node whose update is a no-op
    }
    case SelectionKind::Synchronous:
      std::copy(aux, aux + n_, out);
      return n_ == 64 ? ~NodeMask{0} : (NodeMask{1} << n_) - 1;
  }
  return mask;
}

Selection MachineSystem::realize(const StateId* c, const StateId* aux, std::uint32_t i,
                                 NodeMask want) const {
  std::vector<StateId> tmp(n_);
  NodeMask mask = successor(c, aux, i, tmp.data());
  if (kind_ == SelectionKind::Exclusive) {
    NodeMask pick = (mask & want) ? (mask & want) : mask;
    return {static_cast<NodeIndex>(std::countr_zero(pick))};
  }
  Selection s;
  for (NodeIndex v = 0; v < n_; ++v) {
    if (mask >> v & 1u) s.push_back(v);
  }
  return s;
}

bool MachineSystem::accepting(const StateId* c) const {
  for (std::size_t v = 0; v < n_; ++v) {
    if (!m_.is_accepting(c[v])) return false;
  }
  return true;
}

bool MachineSystem::rejecting(const StateId* c) const {
  for (std::size_t v = 0; v < n_; ++v) {
    if (!m_.is_rejecting(c[v])) return false;
  }
  return true;
}

ConfigStore::ConfigStore(std::size_t width) : width_(width) {
  slots_.assign(1024, kNoVertex);
  mask_ = slots_.size() - 1;
}

std::uint64_t ConfigStore::hash(const StateId* c) const {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ width_;
  for (std::size_t i = 0; i < width_; ++i) {
    h = (h ^ c[i]) * 0xBF58476D1CE4E5B9ull;
    h ^= h >> 29;
  }
  h ^= h >> 32;
  return h;
}

VertexId ConfigStore::find(const StateId* c) const {
  auto slot = hash(c) & mask_;
  while (true) {
    const auto id = slots_[slot];
    if (id == kNoVertex) return kNoVertex;
    if (std::memcmp(get(id), c, width_ * sizeof(StateId)) == 0) return id;
    slot = (slot + 1) & mask_;
  }
}

std::pair<VertexId, bool> ConfigStore::insert(const StateId* c) {
  auto slot = hash(c) & mask_;
  while (true) {
    const auto id = slots_[slot];
    if (id == kNoVertex) break;
    if (std::memcmp(get(id), c, width_ * sizeof(StateId)) == 0) return {id, false};
    slot = (slot + 1) & mask_;
  }
  if (count_ >= kNoVertex - 1) throw TooLarge("configuration store is full");
  const auto id = static_cast<VertexId>(count_++);
  arena_.insert(arena_.end(), c, c + width_);
  slots_[slot] = id;
  if (count_ * 2 > slots_.size()) grow();
  return {id, true};
}

void ConfigStore::grow() {
  slots_.assign(slots_.size() * 2, kNoVertex);
  mask_ = slots_.size() - 1;
  for (VertexId id = 0; id < count_; ++id) {
    auto slot = hash(get(id)) & mask_;
    while (slots_[slot] != kNoVertex) slot = (slot + 1) & mask_;
    slots_[slot] = id;
  }
}

Configuration ConfigStore::configuration(VertexId v) const {
  const auto* c = get(v);
  return Configuration(std::vector<StateId>(c, c + width_));
}

namespace {

constexpr VertexId kUnassigned = kNoVertex;

struct Frame {
  VertexId v;
  std::uint32_t next;
  std::uint32_t count;
};

}  // namespace

Exploration explore(const TransitionSystem& ts, std::size_t max_vertices) {
  const auto width = ts.width();
  const auto aux_width = ts.aux_width();
  Exploration ex(width);
  std::vector<VertexId> low;
  std::vector<VertexId> stack;  // Tarjan stack
  std::vector<Frame> frames;
  std::vector<StateId> cfg_buf;  // per frame: configuration then aux
  std::vector<StateId> tmp(width);
  const auto frame_width = width + aux_width;

  auto discover = [&](const StateId* c, VertexId parent, std::uint32_t edge) {
    auto [v, inserted] = ex.store.insert(c);
    (void)inserted;
    if (ex.store.size() > max_vertices) {
      throw TooLarge("more than " + std::to_string(max_vertices) + " reachable configurations");
    }
    low.push_back(v);
    ex.scc.push_back(kUnassigned);
    ex.parent.push_back(parent);
    ex.parent_edge.push_back(edge);
    stack.push_back(v);
    const auto base = frames.size() * frame_width;
    cfg_buf.resize(base + frame_width);
    std::copy(c, c + width, cfg_buf.begin() + static_cast<std::ptrdiff_t>(base));
    const auto count = ts.prepare(cfg_buf.data() + base, cfg_buf.data() + base + width);
    frames.push_back({v, 0, count});
  };

  ts.initial(tmp.data());
  discover(tmp.data(), kNoVertex, 0);

  while (!frames.empty()) {
    auto& f = frames.back();
    if (f.next < f.count) {
      const auto i = f.next++;
      const auto base = (frames.size() - 1) * frame_width;
      ts.successor(cfg_buf.data() + base, cfg_buf.data() + base + width, i, tmp.data());
      ++ex.edges;
      const auto w = ex.store.find(tmp.data());
      if (w == kNoVertex) {
        discover(tmp.data(), f.v, i);  // invalidates f
      } else if (ex.scc[w] == kUnassigned) {
        low[f.v] = std::min(low[f.v], w);  // w is on the Tarjan stack
      }
      continue;
    }
    const auto v = f.v;
    frames.pop_back();
    cfg_buf.resize(frames.size() * frame_width);
    if (low[v] == v) {
      const auto id = static_cast<VertexId>(ex.components.size());
      Component comp;
      VertexId w;
      do {
        w = stack.back();
        stack.pop_back();
        ex.scc[w] = id;
        ++comp.size;
      } while (w != v);
      ex.components.push_back(comp);
    }
    if (!frames.empty()) {
      auto& p = frames.back();
      low[p.v] = std::min(low[p.v], low[v]);
    }
  }
  low.clear();
  low.shrink_to_fit();

  // Second pass: component-level facts that need every edge.
  std::vector<StateId> aux(aux_width);
  for (VertexId v = 0; v < ex.store.size(); ++v) {
    const auto* c = ex.store.get(v);
    auto& comp = ex.components[ex.scc[v]];
    if (comp.non_accepting == kNoVertex && !ts.accepting(c)) comp.non_accepting = v;
    if (comp.non_rejecting == kNoVertex && !ts.rejecting(c)) comp.non_rejecting = v;
    const auto count = ts.prepare(c, aux.data());
    for (std::uint32_t i = 0; i < count; ++i) {
      const auto mask = ts.successor(ex.store.get(v), aux.data(), i, tmp.data());
      const auto w = ex.store.find(tmp.data());
      if (ex.scc[w] == ex.scc[v]) {
        comp.cover |= mask;
        comp.internal_edge = true;
      } else {
        comp.bottom = false;
      }
    }
  }
  return ex;
}

std::vector<std::pair<VertexId, std::uint32_t>> path_within_component(
    const TransitionSystem& ts, const Exploration& ex, VertexId from, VertexId to,
    bool require_step) {
  if (from == to && !require_step) return {};
  const auto comp = ex.scc[from];
  std::vector<StateId> aux(ts.aux_width());
  std::vector<StateId> tmp(ts.width());
  // BFS over component members; predecessor maps stay local to the component.
  std::unordered_map<VertexId, std::pair<VertexId, std::uint32_t>> pred;
  std::deque<VertexId> queue{from};
  bool found = false;
  while (!queue.empty() && !found) {
    const auto v = queue.front();
    queue.pop_front();
    const auto count = ts.prepare(ex.store.get(v), aux.data());
    for (std::uint32_t i = 0; i < count; ++i) {
      ts.successor(ex.store.get(v), aux.data(), i, tmp.data());
      const auto w = ex.store.find(tmp.data());
      if (ex.scc[w] != comp) continue;
      if (w == to) {
        pred[kNoVertex] = {v, i};
        found = true;
        break;
      }
      if (w != from && !pred.count(w)) {
        pred[w] = {v, i};
        queue.push_back(w);
      }
    }
  }
  if (!found) throw Error("internal: no path inside a strongly connected component");
  std::vector<std::pair<VertexId, std::uint32_t>> path;
  auto step = pred[kNoVertex];
  while (true) {
    path.push_back(step);
    if (step.first == from) break;
    step = pred[step.first];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace distaut
