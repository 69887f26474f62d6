#include "distaut/verdict.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "distaut/errors.hpp"

namespace distaut {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Accept: return "Accept";
    case Outcome::Reject: return "Reject";
    case Outcome::Inconsistent: return "Inconsistent";
    case Outcome::TooLarge: return "TooLarge";
  }
  return "?";
}

namespace {

NodeMask all_nodes(std::size_t n) {
  return n >= 64 ? ~NodeMask{0} : (NodeMask{1} << n) - 1;
}

using Step = std::pair<VertexId, std::uint32_t>;

// BFS inside from's component for the first edge accepted by `goal`.
std::vector<Step> search_component(const TransitionSystem& ts, const Exploration& ex,
                                   VertexId from,
                                   const std::function<bool(VertexId, NodeMask)>& goal) {
  const auto comp = ex.scc[from];
  std::vector<StateId> aux(ts.aux_width());
  std::vector<StateId> tmp(ts.width());
  std::unordered_map<VertexId, Step> pred;
  std::deque<VertexId> queue{from};
  pred[from] = {kNoVertex, 0};
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    const auto count = ts.prepare(ex.store.get(v), aux.data());
    for (std::uint32_t i = 0; i < count; ++i) {
      const auto mask = ts.successor(ex.store.get(v), aux.data(), i, tmp.data());
      const auto w = ex.store.find(tmp.data());
      if (ex.scc[w] != comp) continue;
      if (goal(w, mask)) {
        std::vector<Step> path{{v, i}};
        auto x = v;
        while (x != from) {
          path.push_back(pred[x]);
          x = pred[x].first;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (!pred.count(w)) {
        pred[w] = {v, i};
        queue.push_back(w);
      }
    }
  }
  return {};
}

VertexId target_of(const TransitionSystem& ts, const Exploration& ex, Step s) {
  std::vector<StateId> aux(ts.aux_width());
  std::vector<StateId> tmp(ts.width());
  ts.prepare(ex.store.get(s.first), aux.data());
  ts.successor(ex.store.get(s.first), aux.data(), s.second, tmp.data());
  return ex.store.find(tmp.data());
}

Selection realize_step(const TransitionSystem& ts, const Exploration& ex, Step s, NodeMask want,
                       NodeMask* covered) {
  std::vector<StateId> aux(ts.aux_width());
  ts.prepare(ex.store.get(s.first), aux.data());
  auto sel = ts.realize(ex.store.get(s.first), aux.data(), s.second, want);
  if (covered) {
    for (auto v : sel) *covered |= NodeMask{1} << v;
  }
  return sel;
}

// Stem from the root to targets[0], then a loop through every target (all
// in one component) that also selects every node in `cover` at least once.
Lasso build_lasso(const TransitionSystem& ts, const Exploration& ex,
                  const std::vector<VertexId>& targets, NodeMask cover) {
  Lasso lasso;
  std::vector<Step> stem;
  for (auto v = targets.front(); ex.parent[v] != kNoVertex; v = ex.parent[v]) {
    stem.emplace_back(ex.parent[v], ex.parent_edge[v]);
  }
  std::reverse(stem.begin(), stem.end());
  for (const auto& s : stem) lasso.stem.push_back(realize_step(ts, ex, s, 0, nullptr));

  NodeMask covered = 0;
  auto need = [&] { return cover & ~covered; };
  VertexId at = targets.front();
  auto walk = [&](const std::vector<Step>& path) {
    for (const auto& s : path) lasso.loop.push_back(realize_step(ts, ex, s, need(), &covered));
    if (!path.empty()) at = target_of(ts, ex, path.back());
  };
  for (std::size_t k = 1; k < targets.size(); ++k) {
    const auto t = targets[k];
    walk(search_component(ts, ex, at, [t](VertexId w, NodeMask) { return w == t; }));
  }
  while (need()) {
    const auto wanted = need();
    auto path = search_component(ts, ex, at,
                                 [wanted](VertexId, NodeMask m) { return (m & wanted) != 0; });
    if (path.empty()) throw Error("internal: component does not cover the requested nodes");
    walk(path);
  }
  const auto home = targets.front();
  if (at != home || lasso.loop.empty()) {
    walk(search_component(ts, ex, at, [home](VertexId w, NodeMask) { return w == home; }));
  }
  lasso.start = ex.store.configuration(0);
  lasso.loop_entry = ex.store.configuration(home);
  return lasso;
}

std::string loop_outcome(const Machine& m, const LabeledGraph& g, const Lasso& lasso) {
  bool all_acc = true;
  bool all_rej = true;
  Configuration c = lasso.loop_entry;
  for (const auto& sel : lasso.loop) {
    all_acc = all_acc && is_accepting_configuration(c, m);
    all_rej = all_rej && is_rejecting_configuration(c, m);
    c = successor(c, sel, m, g);
  }
  if (all_acc) return "accepting";
  if (all_rej) return "rejecting";
  return "neither";
}

Verdict too_large(const std::string& what) {
  Verdict v;
  v.outcome = Outcome::TooLarge;
  v.note = what;
  return v;
}

Outcome combine(bool accept_fails, bool reject_fails) {
  if (!accept_fails) return Outcome::Accept;
  if (!reject_fails) return Outcome::Reject;
  return Outcome::Inconsistent;
}

// Shared tail of decide_strong / decide_weak. `relevant` marks the
// components in which some fair run can stay forever.
Verdict classify_components(const Machine& m, const LabeledGraph& g, const MachineSystem& ts,
                            const Exploration& ex, const std::vector<bool>& relevant,
                            NodeMask cover, const DecideOptions& options) {
  VertexId non_acc = kNoVertex;
  VertexId non_rej = kNoVertex;
  VertexId any = kNoVertex;
  for (std::size_t k = 0; k < ex.components.size(); ++k) {
    if (!relevant[k]) continue;
    const auto& c = ex.components[k];
    if (any == kNoVertex) any = c.non_accepting != kNoVertex ? c.non_accepting : c.non_rejecting;
    if (non_acc == kNoVertex && c.non_accepting != kNoVertex) non_acc = c.non_accepting;
    if (non_rej == kNoVertex && c.non_rejecting != kNoVertex) non_rej = c.non_rejecting;
  }
  if (any == kNoVertex) throw Error("internal: no component hosts a fair run");
  Verdict v;
  v.outcome = combine(non_acc != kNoVertex, non_rej != kNoVertex);
  v.configurations = ex.store.size();
  if (options.witness) {
    std::vector<std::vector<VertexId>> groups;
    if (v.outcome == Outcome::Accept) groups.push_back({non_rej});
    else if (v.outcome == Outcome::Reject) groups.push_back({non_acc});
    else if (ex.scc[non_acc] == ex.scc[non_rej]) groups.push_back({non_acc, non_rej});
    else groups = {{non_acc}, {non_rej}};
    for (const auto& targets : groups) {
      auto lasso = build_lasso(ts, ex, targets, cover);
      lasso.outcome = loop_outcome(m, g, lasso);
      v.witnesses.push_back(std::move(lasso));
    }
  }
  return v;
}

}  // namespace

Verdict decide_strong(const Machine& m, const LabeledGraph& g, SelectionKind kind,
                      const DecideOptions& options) {
  require_valid(g);
  try {
    MachineSystem ts(m, g, kind);
    auto ex = explore(ts, options.max_configs);
    std::vector<bool> relevant(ex.components.size());
    for (std::size_t k = 0; k < relevant.size(); ++k) relevant[k] = ex.components[k].bottom;
    return classify_components(m, g, ts, ex, relevant, 0, options);
  } catch (const TooLarge& e) {
    return too_large(e.what());
  }
}

Verdict decide_weak(const Machine& m, const LabeledGraph& g, SelectionKind kind,
                    const DecideOptions& options) {
  require_valid(g);
  try {
    MachineSystem ts(m, g, kind);
    auto ex = explore(ts, options.max_configs);
    const auto everyone = all_nodes(g.node_count());
    std::vector<bool> relevant(ex.components.size());
    for (std::size_t k = 0; k < relevant.size(); ++k) {
      relevant[k] = ex.components[k].cover == everyone;
    }
    return classify_components(m, g, ts, ex, relevant, everyone, options);
  } catch (const TooLarge& e) {
    return too_large(e.what());
  }
}

Verdict decide_synchronous(const Machine& m, const LabeledGraph& g, const DecideOptions& options) {
  require_valid(g);
  try {
    MachineSystem ts(m, g, SelectionKind::Synchronous);
    const auto n = g.node_count();
    ConfigStore store(n);
    std::vector<StateId> cur(n), aux(n), nxt(n);
    ts.initial(cur.data());
    store.insert(cur.data());
    VertexId repeat = kNoVertex;
    while (true) {
      ts.prepare(cur.data(), aux.data());
      ts.successor(cur.data(), aux.data(), 0, nxt.data());
      auto [id, inserted] = store.insert(nxt.data());
      if (!inserted) {
        repeat = id;
        break;
      }
      if (store.size() > options.max_configs) {
        throw TooLarge("synchronous run longer than " + std::to_string(options.max_configs));
      }
      cur.swap(nxt);
    }
    // Vertices are numbered along the run, so the cycle is repeat..size-1.
    bool all_acc = true;
    bool all_rej = true;
    for (VertexId k = repeat; k < store.size(); ++k) {
      all_acc = all_acc && ts.accepting(store.get(k));
      all_rej = all_rej && ts.rejecting(store.get(k));
    }
    Verdict v;
    v.outcome = all_acc ? Outcome::Accept : all_rej ? Outcome::Reject : Outcome::Inconsistent;
    v.configurations = store.size();
    if (options.witness) {
      Selection everyone(n);
      for (NodeIndex x = 0; x < n; ++x) everyone[x] = x;
      Lasso lasso;
      lasso.stem.assign(repeat, everyone);
      lasso.loop.assign(store.size() - repeat, everyone);
      lasso.start = store.configuration(0);
      lasso.loop_entry = store.configuration(repeat);
      lasso.outcome = loop_outcome(m, g, lasso);
      v.witnesses.push_back(std::move(lasso));
    }
    return v;
  } catch (const TooLarge& e) {
    return too_large(e.what());
  }
}

Verdict decide_weak_product(const Machine& m, const LabeledGraph& g, SelectionKind kind,
                            const DecideOptions& options) {
  require_valid(g);
  const auto n = g.node_count();
  if (n > 16) return too_large("product check limited to 16 nodes");
  const auto selections = PermittedSelections(kind, n).enumerate(16);
  const std::uint32_t everyone = n == 32 ? ~0u : (1u << n) - 1;

  std::vector<Configuration> configs;
  std::unordered_map<Configuration, std::uint32_t, ConfigurationHash> config_id;
  struct Node {
    std::uint32_t config;
    std::uint32_t pending;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::uint64_t, std::uint32_t> node_id;
  struct Arc {
    std::uint32_t to;
    bool reset;
  };
  std::vector<std::vector<Arc>> adj;

  auto intern_config = [&](Configuration c) {
    auto [it, inserted] = config_id.emplace(c, static_cast<std::uint32_t>(configs.size()));
    if (inserted) configs.push_back(std::move(c));
    return it->second;
  };
  auto intern_node = [&](std::uint32_t c, std::uint32_t pending) {
    const std::uint64_t key = (std::uint64_t{c} << 32) | pending;
    auto [it, inserted] = node_id.emplace(key, static_cast<std::uint32_t>(nodes.size()));
    if (inserted) {
      if (nodes.size() >= options.max_product) {
        throw TooLarge("product exceeds " + std::to_string(options.max_product) + " states");
      }
      nodes.push_back({c, pending});
      adj.emplace_back();
    }
    return it->second;
  };

  try {
    intern_node(intern_config(initial_configuration(m, g)), everyone);
    std::unordered_map<std::uint64_t, std::uint32_t> succ_cache;  // (config, selection) -> config
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const auto [c, pending] = nodes[k];
      for (std::size_t s = 0; s < selections.size(); ++s) {
        const std::uint64_t key = std::uint64_t{c} * selections.size() + s;
        auto it = succ_cache.find(key);
        std::uint32_t c2;
        if (it != succ_cache.end()) {
          c2 = it->second;
        } else {
          c2 = intern_config(successor(configs[c], selections[s], m, g));
          succ_cache.emplace(key, c2);
        }
        std::uint32_t left = pending;
        for (auto v : selections[s]) left &= ~(1u << v);
        const bool reset = left == 0;
        const auto to = intern_node(c2, reset ? everyone : left);
        adj[k].push_back({to, reset});
      }
    }
  } catch (const TooLarge& e) {
    return too_large(e.what());
  }

  // Recursive-free Tarjan over the explicit product.
  const auto total = nodes.size();
  std::vector<std::uint32_t> index(total, UINT32_MAX), low(total), comp(total, UINT32_MAX);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  std::uint32_t counter = 0, comps = 0;
  for (std::uint32_t root = 0; root < total; ++root) {
    if (index[root] != UINT32_MAX) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos < adj[v].size()) {
        const auto w = adj[v][pos++].to;
        if (index[w] == UINT32_MAX) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          call.push_back({w, 0});
        } else if (comp[w] == UINT32_MAX) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const auto done = v;
      call.pop_back();
      if (low[done] == index[done]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          comp[w] = comps;
        } while (w != done);
        ++comps;
      }
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  std::vector<char> has_reset(comps, 0), has_non_acc(comps, 0), has_non_rej(comps, 0);
  for (std::uint32_t v = 0; v < total; ++v) {
    for (const auto& a : adj[v]) {
      if (a.reset && comp[a.to] == comp[v]) has_reset[comp[v]] = 1;
    }
    const auto& c = configs[nodes[v].config];
    if (!is_accepting_configuration(c, m)) has_non_acc[comp[v]] = 1;
    if (!is_rejecting_configuration(c, m)) has_non_rej[comp[v]] = 1;
  }
  bool acc_fails = false;
  bool rej_fails = false;
  for (std::uint32_t k = 0; k < comps; ++k) {
    if (!has_reset[k]) continue;
    acc_fails = acc_fails || has_non_acc[k];
    rej_fails = rej_fails || has_non_rej[k];
  }
  Verdict v;
  v.outcome = combine(acc_fails, rej_fails);
  v.configurations = configs.size();
  v.note = "product states: " + std::to_string(total);
  return v;
}

Verdict decide(const Machine& m, const LabeledGraph& g, const ModelClass& mc,
               const DecideOptions& options) {
  auto violations = check_model_class(m, mc);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  require_valid(g);
  if (mc.selection == SelectionKind::Synchronous) return decide_synchronous(m, g, options);
  if (mc.fairness == Fairness::Strong) return decide_strong(m, g, mc.selection, options);
  return decide_weak(m, g, mc.selection, options);
}

bool replay_lasso(const Machine& m, const LabeledGraph& g, SelectionKind kind, const Lasso& lasso) {
  PermittedSelections permitted(kind, g.node_count());
  if (lasso.loop.empty()) return false;
  Configuration c = initial_configuration(m, g);
  if (!(c == lasso.start)) return false;
  for (const auto& s : lasso.stem) {
    if (!permitted.contains(s)) return false;
    c = successor(c, s, m, g);
  }
  if (!(c == lasso.loop_entry)) return false;
  for (const auto& s : lasso.loop) {
    if (!permitted.contains(s)) return false;
    c = successor(c, s, m, g);
  }
  return c == lasso.loop_entry;
}

ConfigGraph build_config_graph(const Machine& m, const LabeledGraph& g, SelectionKind kind,
                               std::size_t max_configs) {
  require_valid(g);
  MachineSystem ts(m, g, kind);
  const auto n = g.node_count();
  ConfigStore store(n);
  std::vector<StateId> cur(n), aux(n), nxt(n);
  ts.initial(cur.data());
  store.insert(cur.data());
  ConfigGraph cg;
  for (VertexId v = 0; v < store.size(); ++v) {
    std::copy(store.get(v), store.get(v) + n, cur.begin());
    const auto count = ts.prepare(cur.data(), aux.data());
    for (std::uint32_t i = 0; i < count; ++i) {
      const auto mask = ts.successor(cur.data(), aux.data(), i, nxt.data());
      auto [w, inserted] = store.insert(nxt.data());
      if (store.size() > max_configs) {
        throw TooLarge("more than " + std::to_string(max_configs) + " reachable configurations");
      }
      cg.arcs.push_back({v, w, mask});
    }
  }
  for (VertexId v = 0; v < store.size(); ++v) {
    cg.vertices.push_back(store.configuration(v));
    cg.accepting.push_back(ts.accepting(store.get(v)));
    cg.rejecting.push_back(ts.rejecting(store.get(v)));
  }
  return cg;
}

std::string config_graph_to_dot(const ConfigGraph& cg, const Machine& m, const LabeledGraph& g) {
  std::ostringstream out;
  out << "digraph configurations {\n";
  for (std::size_t v = 0; v < cg.vertices.size(); ++v) {
    std::string label;
    for (std::size_t x = 0; x < g.node_count(); ++x) {
      if (x) label += " ";
      label += m.state_name(cg.vertices[v][x]);
    }
    out << "  c" << v << " [label=\"" << label << "\"";
    if (cg.accepting[v]) out << ", shape=doublecircle";
    else if (cg.rejecting[v]) out << ", shape=box";
    out << "];\n";
  }
  for (const auto& a : cg.arcs) {
    std::string sel;
    for (NodeIndex x = 0; x < g.node_count(); ++x) {
      if (a.selections >> x & 1u) sel += (sel.empty() ? "" : ",") + g.id(x);
    }
    out << "  c" << a.from << " -> c" << a.to << " [label=\"" << sel << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string verdict_to_json(const Verdict& v, const Machine& m, const LabeledGraph& g) {
  using nlohmann::json;
  auto sel_json = [&](const Selection& s) {
    json a = json::array();
    for (auto x : s) a.push_back(g.id(x));
    return a;
  };
  auto conf_json = [&](const Configuration& c) {
    json a = json::array();
    for (auto q : c.states()) a.push_back(m.state_name(q));
    return a;
  };
  json doc;
  doc["verdict"] = to_string(v.outcome);
  doc["configurations"] = v.configurations;
  if (!v.note.empty()) doc["note"] = v.note;
  if (!v.witnesses.empty()) {
    doc["witnesses"] = json::array();
    for (const auto& l : v.witnesses) {
      json w;
      w["start"] = conf_json(l.start);
      w["loop_entry"] = conf_json(l.loop_entry);
      w["stem"] = json::array();
      for (const auto& s : l.stem) w["stem"].push_back(sel_json(s));
      w["loop"] = json::array();
      for (const auto& s : l.loop) w["loop"].push_back(sel_json(s));
      w["run"] = l.outcome;
      doc["witnesses"].push_back(w);
    }
  }
  return doc.dump(2) + "\n";
}

std::vector<ConsistencyRow> consistency_report(const Machine& m, const ModelClass& mc,
                                               const std::vector<LabeledGraph>& corpus,
                                               const DecideOptions& options) {
  std::vector<ConsistencyRow> rows;
  for (const auto& g : corpus) rows.push_back({g, decide(m, g, mc, options)});
  return rows;
}

}  // namespace distaut
