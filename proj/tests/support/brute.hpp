#pragma once

// Reference decision procedures for tests. Slow and direct: every
// (configuration, selection) pair is an explicit edge, reachability is
// one BFS per vertex. Nothing here reuses the exploration engine.

#include <cstdint>
#include <map>
#include <queue>
#include <vector>

#include "distaut/engine.hpp"
#include "distaut/graph.hpp"
#include "distaut/machine.hpp"
#include "distaut/verdict.hpp"

namespace brute {

using distaut::LabeledGraph;
using distaut::Machine;
using distaut::Outcome;
using distaut::SelectionKind;
using distaut::StateId;

using Config = std::vector<StateId>;

inline std::vector<std::vector<std::uint32_t>> selections(SelectionKind kind, std::size_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  if (kind == SelectionKind::Synchronous) {
    std::vector<std::uint32_t> all;
    for (std::uint32_t v = 0; v < n; ++v) all.push_back(v);
    out.push_back(all);
  } else if (kind == SelectionKind::Exclusive) {
    for (std::uint32_t v = 0; v < n; ++v) out.push_back({v});
  } else {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::uint32_t> s;
      for (std::uint32_t v = 0; v < n; ++v) {
        if (mask >> v & 1) s.push_back(v);
      }
      out.push_back(s);
    }
  }
  return out;
}

inline Config step(const Config& c, const std::vector<std::uint32_t>& sel, const Machine& m,
                   const LabeledGraph& g) {
  Config next = c;
  for (auto v : sel) {
    std::map<StateId, int> counts;
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      if (u != v && g.adjacent(v, static_cast<distaut::NodeIndex>(u))) ++counts[c[u]];
    }
    distaut::BoundedMultiset p(m.beta());
    for (auto [q, k] : counts) p.add(q, std::min(k, m.beta()));
    next[v] = m.next(c[v], p);
  }
  return next;
}

struct Edge {
  std::size_t to;
  std::vector<std::uint32_t> sel;
};

struct Space {
  std::vector<Config> vertices;
  std::vector<std::vector<Edge>> out;
  std::vector<std::vector<bool>> reach;  // reach[a][b]: b reachable from a, a itself included
};

inline Space explore(const Machine& m, const LabeledGraph& g, SelectionKind kind) {
  Space s;
  std::map<Config, std::size_t> index;
  Config init;
  for (const auto& l : g.labels()) init.push_back(m.init_state(l));
  index[init] = 0;
  s.vertices.push_back(init);
  s.out.emplace_back();
  const auto sels = selections(kind, g.node_count());
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    for (const auto& sel : sels) {
      auto next = step(s.vertices[i], sel, m, g);
      auto [it, fresh] = index.emplace(next, s.vertices.size());
      if (fresh) {
        s.vertices.push_back(next);
        s.out.emplace_back();
      }
      s.out[i].push_back({it->second, sel});
    }
  }
  const auto n = s.vertices.size();
  s.reach.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    std::queue<std::size_t> q;
    q.push(a);
    s.reach[a][a] = true;
    while (!q.empty()) {
      auto x = q.front();
      q.pop();
      for (const auto& e : s.out[x]) {
        if (!s.reach[a][e.to]) {
          s.reach[a][e.to] = true;
          q.push(e.to);
        }
      }
    }
  }
  return s;
}

inline bool all_in(const Config& c, const Machine& m, bool accepting) {
  for (auto q : c) {
    if (accepting ? !m.is_accepting(q) : !m.is_rejecting(q)) return false;
  }
  return true;
}

inline Outcome verdict(bool all_accepting, bool all_rejecting) {
  if (all_accepting) return Outcome::Accept;
  if (all_rejecting) return Outcome::Reject;
  return Outcome::Inconsistent;
}

// Strong fairness: fair runs end up cycling through a whole bottom component.
inline Outcome decide_strong(const Machine& m, const LabeledGraph& g, SelectionKind kind) {
  const auto s = explore(m, g, kind);
  const auto n = s.vertices.size();
  bool acc = true, rej = true;
  for (std::size_t v = 0; v < n; ++v) {
    bool bottom = true;
    for (std::size_t u = 0; u < n && bottom; ++u) {
      if (s.reach[v][u] && !s.reach[u][v]) bottom = false;
    }
    if (!bottom) continue;
    acc = acc && all_in(s.vertices[v], m, true);
    rej = rej && all_in(s.vertices[v], m, false);
  }
  return verdict(acc, rej);
}

// Weak fairness: v is visited infinitely often by some fair run iff every
// node is selected on some edge that stays inside v's component.
inline Outcome decide_weak(const Machine& m, const LabeledGraph& g, SelectionKind kind) {
  const auto s = explore(m, g, kind);
  const auto n = s.vertices.size();
  bool acc = true, rej = true;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<bool> covered(g.node_count(), false);
    for (std::size_t a = 0; a < n; ++a) {
      if (!(s.reach[v][a] && s.reach[a][v])) continue;
      for (const auto& e : s.out[a]) {
        if (!(s.reach[v][e.to] && s.reach[e.to][v])) continue;
        for (auto x : e.sel) covered[x] = true;
      }
    }
    bool fair = true;
    for (bool b : covered) fair = fair && b;
    if (!fair) continue;
    acc = acc && all_in(s.vertices[v], m, true);
    rej = rej && all_in(s.vertices[v], m, false);
  }
  return verdict(acc, rej);
}

// The synchronous run is a lasso; its verdict is read off the loop.
inline Outcome decide_synchronous(const Machine& m, const LabeledGraph& g) {
  std::map<Config, std::size_t> seen;
  std::vector<Config> run;
  Config c;
  for (const auto& l : g.labels()) c.push_back(m.init_state(l));
  const auto all = selections(SelectionKind::Synchronous, g.node_count())[0];
  while (!seen.count(c)) {
    seen[c] = run.size();
    run.push_back(c);
    c = step(c, all, m, g);
  }
  bool acc = true, rej = true;
  for (std::size_t i = seen[c]; i < run.size(); ++i) {
    acc = acc && all_in(run[i], m, true);
    rej = rej && all_in(run[i], m, false);
  }
  return verdict(acc, rej);
}

inline Outcome decide(const Machine& m, const LabeledGraph& g, SelectionKind kind,
                      distaut::Fairness fairness) {
  if (kind == SelectionKind::Synchronous) return brute::decide_synchronous(m, g);
  return fairness == distaut::Fairness::Strong ? brute::decide_strong(m, g, kind) : brute::decide_weak(m, g, kind);
}

}  // namespace brute
