#include "distaut/zoo.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "distaut/errors.hpp"
#include "distaut/rule_table.hpp"
#include "distaut/transforms.hpp"
#include "distaut/verdict.hpp"

namespace distaut {

namespace {

std::shared_ptr<const MachineRef> builtin_ref(const std::string& name,
                                              std::map<std::string, std::int64_t> params = {},
                                              std::vector<std::string> alphabet = {}) {
  auto ref = std::make_shared<MachineRef>();
  ref->kind = "builtin";
  ref->name = name;
  ref->params = std::move(params);
  ref->alphabet = std::move(alphabet);
  return ref;
}

std::vector<std::size_t> degrees(const LabeledGraph& g) {
  std::vector<std::size_t> d(g.node_count(), 0);
  for (const auto& [u, v] : g.edges()) {
    ++d[u];
    ++d[v];
  }
  return d;
}

}  // namespace

// ---- oracles ------------------------------------------------------------

bool has_black_node(const LabeledGraph& g) {
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (g.label(static_cast<NodeIndex>(v)) == "black") return true;
  }
  return false;
}

bool is_star(const LabeledGraph& g) {
  const auto n = g.node_count();
  if (n < 3 || g.edge_count() != n - 1) return false;
  const auto d = degrees(g);
  std::size_t centers = 0;
  std::size_t leaves = 0;
  for (auto x : d) {
    if (x == n - 1) ++centers;
    if (x == 1) ++leaves;
  }
  return centers == 1 && leaves == n - 1;
}

bool is_even_star(const LabeledGraph& g) { return is_star(g) && (g.node_count() - 1) % 2 == 0; }

bool is_labeled_triangle(const LabeledGraph& g) {
  if (g.node_count() != 3 || g.edge_count() != 3) return false;
  std::set<std::string> labels;
  for (std::size_t v = 0; v < 3; ++v) labels.insert(g.label(static_cast<NodeIndex>(v)));
  return labels == std::set<std::string>{"0", "1", "2"};
}

// ---- black detector ---------------------------------------------------------

ZooEntry black_detector() {
  MachineHeader h;
  h.name = "black-detector";
  h.states = {"black", "white"};
  h.alphabet = {"black", "white"};
  h.beta = 1;
  h.init = {{"black", "black"}, {"white", "white"}};
  h.accepting = {"black"};
  h.rejecting = {"white"};
  RuleTable rt;
  rt.rules.push_back({"white", {{"black", Comparator::Ge, 1}}, "black"});
  auto m = compile_rule_table(rt, h).with_origin(builtin_ref("black-detector"));
  return {"black-detector", m, ModelClass::parse("set.stabilizing.liberal.weak"), has_black_node,
          "some node is labeled black"};
}

// ---- stabilizing star recognizer --------------------------------------------

namespace {

enum Estimate { kLeaf = 0, kCenter = 1, kUnknown = 2, kNeither = 3 };
const char* const kEstimateNames[] = {"leaf", "center", "unknown", "neither"};

}  // namespace

ZooEntry star_recognizer_stabilizing() {
  // state = estimate * 2 + color
  MachineDef def;
  def.name = "star-stabilizing";
  def.alphabet = {std::string(kUnlabeled)};
  def.beta = 1;
  for (int d = 0; d < 4; ++d) {
    for (int c = 0; c < 2; ++c) {
      const auto s = static_cast<StateId>(d * 2 + c);
      def.states.push_back(std::string("(") + kEstimateNames[d] + "," + std::to_string(c) + ")");
      if (d == kLeaf || d == kCenter) def.accepting.push_back(s);
      else def.rejecting.push_back(s);
    }
  }
  def.init = {static_cast<StateId>(kUnknown * 2)};
  def.delta = std::make_shared<ClosureTransition>([](StateId s, const BoundedMultiset& nb) {
    const int d = s / 2;
    const int c = s % 2;
    bool est[4] = {false, false, false, false};
    bool col[2] = {false, false};
    for (const auto& e : nb.entries()) {
      est[e.state / 2] = true;
      col[e.state % 2] = true;
    }
    const bool mixed = col[0] && col[1];
    const bool only_center = est[kCenter] && !est[kLeaf] && !est[kUnknown] && !est[kNeither];
    int next = d;
    if (est[kNeither]) next = kNeither;                                     // (a)
    else if (d == kUnknown && !est[kCenter] && mixed) next = kCenter;        // (b)
    else if (d == kUnknown && est[kCenter] && mixed) next = kNeither;        // (c)
    else if (d == kUnknown && only_center && !mixed) next = kLeaf;           // (d)
    else if (d == kCenter && est[kCenter]) next = kNeither;                  // (e)
    else if (d == kLeaf && mixed) next = kNeither;                           // (f)
    return static_cast<StateId>(next * 2 + (1 - c));
  });
  def.origin = builtin_ref("star-stabilizing");
  return {"star-stabilizing", Machine(std::move(def)),
          ModelClass::parse("set.stabilizing.liberal.strong"), is_star, "the graph is a star"};
}

// ---- halting star recognizer ------------------------------------------------

namespace {

enum HaltStar : StateId { kInit = 0, kLeafS = 1, kNonLeaf = 2, kAccept = 3, kReject = 4 };

}  // namespace

ZooEntry star_recognizer_halting() {
  MachineDef def;
  def.name = "star-halting";
  def.states = {"init", "leaf", "non-leaf", "accept", "reject"};
  def.alphabet = {std::string(kUnlabeled)};
  def.beta = 2;
  def.init = {kInit};
  def.accepting = {kAccept};
  def.rejecting = {kReject};
  def.delta = std::make_shared<ClosureTransition>(
      [](StateId s, const BoundedMultiset& nb) -> StateId {
        if (nb.total() == 1) {
          const auto t = nb.entries()[0].state;
          if (t == kInit || t == kNonLeaf) return kLeafS;   // (a.1)
          if (t == kLeafS || t == kReject) return kReject;  // (a.2)
          return kAccept;                                   // (a.3)
        }
        if (nb.contains(kReject) || nb.contains(kNonLeaf)) return kReject;  // (b.1)
        if (nb.contains(kInit)) return kNonLeaf;                            // (b.2)
        (void)s;
        return kAccept;                                                     // (b.3)
      },
      std::vector<StateId>{kAccept, kReject});
  def.origin = builtin_ref("star-halting");
  return {"star-halting", Machine(std::move(def)), ModelClass::parse("multiset.halting.liberal.weak"),
          is_star, "the graph is a star"};
}

// ---- even star counter ------------------------------------------------------

namespace {

// 0..3: star phase (init, leaf, non-leaf, reject)
// 4..8: counted leaves (visible, invisible, dead, even, odd)
// 9..26: center (ph, p, d), 9 + (ph*2 + p)*3 + d, d: 0 none, 1 -> 0, 2 -> 1
enum EvenStar : StateId {
  eInit = 0, eLeaf = 1, eNonLeaf = 2, eReject = 3,
  eVisible = 4, eInvisible = 5, eDead = 6, eEven = 7, eOdd = 8, eCenter = 9
};

StateId center_state(int ph, int p, int d) { return static_cast<StateId>(eCenter + (ph * 2 + p) * 3 + d); }
bool is_center(StateId s) { return s >= eCenter; }
int center_ph(StateId s) { return (s - eCenter) / 6; }
int center_p(StateId s) { return (s - eCenter) / 3 % 2; }
int center_d(StateId s) { return (s - eCenter) % 3; }

StateId even_star_next(StateId s, const BoundedMultiset& nb) {
  if (s <= eNonLeaf) {
    if (nb.total() == 1) {
      const auto t = nb.entries()[0].state;
      if (t == eInit || t == eNonLeaf) return eLeaf;
      if (t == eLeaf || t == eReject) return eReject;
      return eInvisible;  // the neighbor has finished the star phase
    }
    if (nb.contains(eReject) || nb.contains(eNonLeaf)) return eReject;
    if (nb.contains(eInit)) return eNonLeaf;
    return center_state(0, 0, 0);
  }
  if (s >= eVisible && s <= eDead) {
    if (nb.total() != 1 || !is_center(nb.entries()[0].state)) return s;
    const auto t = nb.entries()[0].state;
    const int ph = center_ph(t);
    if (s == eInvisible && ph == 0) return eVisible;
    if (s == eVisible && ph == 0) return eInvisible;
    if (s == eVisible && ph == 1) return eDead;
    if (s == eDead && ph == 2 && center_d(t) != 0) return center_d(t) == 1 ? eEven : eOdd;
    return s;
  }
  if (is_center(s) && center_d(s) == 0) {
    const int ph = center_ph(s);
    const int p = center_p(s);
    if (ph == 0 && nb.count(eVisible) == 1) return center_state(1, 1 - p, 0);
    if (ph == 1) {
      bool all_dead = true;
      bool invisible_or_dead = true;
      for (const auto& e : nb.entries()) {
        if (e.state != eDead) all_dead = false;
        if (e.state != eDead && e.state != eInvisible) invisible_or_dead = false;
      }
      if (invisible_or_dead && nb.contains(eInvisible)) return center_state(0, p, 0);
      if (all_dead) return center_state(2, p, p + 1);
    }
  }
  return s;
}

}  // namespace

ZooEntry even_star_counter() {
  MachineDef def;
  def.name = "even-star";
  def.states = {"init", "leaf", "non-leaf", "reject", "visible", "invisible", "dead", "even", "odd"};
  def.alphabet = {std::string(kUnlabeled)};
  def.beta = 2;
  def.init = {eInit};
  const char* const dnames[] = {"none", "0", "1"};
  std::vector<StateId> traps = {eReject, eEven, eOdd};
  def.accepting = {eEven};
  def.rejecting = {eReject, eOdd};
  for (int ph = 0; ph < 3; ++ph) {
    for (int p = 0; p < 2; ++p) {
      for (int d = 0; d < 3; ++d) {
        const auto s = center_state(ph, p, d);
        def.states.push_back("(" + std::to_string(ph) + "," + std::to_string(p) + "," + dnames[d] + ")");
        if (d == 1) def.accepting.push_back(s);
        if (d == 2) def.rejecting.push_back(s);
        if (d != 0) traps.push_back(s);
      }
    }
  }
  def.delta = std::make_shared<ClosureTransition>(even_star_next, traps);
  def.origin = builtin_ref("even-star");
  return {"even-star", Machine(std::move(def)), ModelClass::parse("multiset.halting.exclusive.strong"),
          is_even_star, "the graph is a star with an even number of leaves"};
}

ZooEntry even_star_counter_liberal() {
  auto base = even_star_counter();
  auto m = exclusive_strong_to_liberal_strong(base.machine);
  return {"even-star-liberal", m, ModelClass::parse("multiset.halting.liberal.strong"), is_even_star,
          "even-star lifted to liberal selection"};
}

// ---- C3 recognizer ------------------------------------------------------------

namespace {

// Node state (label l, color c, bits x y) plus, for label 2, (phase, stage).
// x travels from label l-1 to label l, y from label l+1 to label l. A
// 2-labeled node flips x, waits for it to come back around, then does the
// same with y. A wave arriving on the idle channel means a second 2-node.
struct C3 {
  int label = 0, color = 0, x = 0, y = 0, phase = 0, wait = 0;
};

constexpr StateId kC3Reject = 0;

StateId c3_encode(const C3& s) {
  const StateId body = static_cast<StateId>(((s.color * 2 + s.x) * 2 + s.y));  // 0..11
  if (s.label < 2) return static_cast<StateId>(1 + s.label * 12 + body);
  return static_cast<StateId>(25 + body * 4 + s.phase * 2 + s.wait);
}

C3 c3_decode(StateId q) {
  C3 s;
  std::size_t body;
  if (q < 25) {
    s.label = (q - 1) / 12;
    body = (q - 1) % 12;
  } else {
    s.label = 2;
    body = (q - 25) / 4;
    s.phase = (q - 25) / 2 % 2;
    s.wait = (q - 25) % 2;
  }
  s.y = static_cast<int>(body % 2);
  s.x = static_cast<int>(body / 2 % 2);
  s.color = static_cast<int>(body / 4);
  return s;
}

StateId c3_next(StateId q, const BoundedMultiset& nb) {
  if (q == kC3Reject || nb.contains(kC3Reject)) return kC3Reject;
  auto s = c3_decode(q);
  const int before = (s.label + 2) % 3;
  const int after = (s.label + 1) % 3;
  bool labels[3] = {false, false, false};
  bool colors[3] = {false, false, false};
  bool xs[2] = {false, false};
  bool ys[2] = {false, false};
  for (const auto& e : nb.entries()) {
    const auto t = c3_decode(e.state);
    labels[t.label] = true;
    colors[t.color] = true;
    if (t.label == before) xs[t.x] = true;
    if (t.label == after) ys[t.y] = true;
  }
  if (labels[s.label] || !labels[before] || !labels[after]) return kC3Reject;
  if (colors[0] && colors[1] && colors[2]) return kC3Reject;
  if ((xs[0] && xs[1]) || (ys[0] && ys[1])) return kC3Reject;
  const int xp = xs[1] ? 1 : 0;
  const int yp = ys[1] ? 1 : 0;
  s.color = (s.color + 1) % 3;
  if (s.label < 2) {
    s.x = xp;
    s.y = yp;
    return c3_encode(s);
  }
  if (s.phase == 0) {
    if (yp != s.y) return kC3Reject;
    if (!s.wait) {
      s.x = 1 - s.x;
      s.wait = 1;
    } else if (xp == s.x) {
      s.phase = 1;
      s.wait = 0;
    }
  } else {
    if (xp != s.x) return kC3Reject;
    if (!s.wait) {
      s.y = 1 - s.y;
      s.wait = 1;
    } else if (yp == s.y) {
      s.phase = 0;
      s.wait = 0;
    }
  }
  return c3_encode(s);
}

std::string c3_name(StateId q) {
  if (q == kC3Reject) return "rej";
  const auto s = c3_decode(q);
  std::string name = "L" + std::to_string(s.label) + "/c" + std::to_string(s.color) + "/x" +
                     std::to_string(s.x) + "y" + std::to_string(s.y);
  if (s.label == 2) name += "/ph" + std::to_string(s.phase) + (s.wait ? "/wait" : "/fire");
  return name;
}

}  // namespace

ZooEntry c3_recognizer() {
  MachineDef def;
  def.name = "c3";
  def.alphabet = {"0", "1", "2"};
  def.beta = 1;
  for (StateId q = 0; q < 73; ++q) {
    def.states.push_back(c3_name(q));
    if (q == kC3Reject) def.rejecting.push_back(q);
    else def.accepting.push_back(q);
  }
  for (int l = 0; l < 3; ++l) {
    C3 s;
    s.label = l;
    def.init.push_back(c3_encode(s));
  }
  def.delta = std::make_shared<ClosureTransition>(c3_next, std::vector<StateId>{kC3Reject});
  def.origin = builtin_ref("c3");
  return {"c3", Machine(std::move(def)), ModelClass::parse("set.stabilizing.liberal.strong"),
          is_labeled_triangle, "the graph is a triangle labeled 0, 1, 2"};
}

// ---- oscillator ---------------------------------------------------------------

ZooEntry oscillator_halt() {
  MachineHeader h;
  h.name = "oscillator";
  h.states = {"p", "q", "h"};
  h.alphabet = {std::string(kUnlabeled)};
  h.beta = 1;
  h.init = {{std::string(kUnlabeled), "p"}};
  h.accepting = {"h"};
  RuleTable rt;
  rt.rules.push_back({"p", {{"q", Comparator::Eq, 0}, {"h", Comparator::Eq, 0}}, "q"});
  rt.rules.push_back({"p", {}, "h"});
  rt.rules.push_back({"q", {{"p", Comparator::Eq, 0}, {"h", Comparator::Eq, 0}}, "p"});
  rt.rules.push_back({"q", {}, "h"});
  auto m = compile_rule_table(rt, h).with_origin(builtin_ref("oscillator"));
  return {"oscillator", m, ModelClass::parse("set.halting.exclusive.weak"),
          [](const LabeledGraph&) { return true; }, "every graph"};
}

// ---- trivial machines -----------------------------------------------------------

namespace {

ZooEntry trivial(bool accept, std::vector<std::string> alphabet) {
  const std::string name = accept ? "trivial-accept" : "trivial-reject";
  MachineHeader h;
  h.name = name;
  h.states = {accept ? "yes" : "no"};
  h.alphabet = alphabet;
  h.beta = 1;
  for (const auto& a : alphabet) h.init[a] = h.states[0];
  (accept ? h.accepting : h.rejecting).push_back(h.states[0]);
  auto m = compile_rule_table({}, h).with_origin(builtin_ref(name, {}, alphabet));
  return {name, m, ModelClass::parse("set.halting.liberal.weak"),
          [accept](const LabeledGraph&) { return accept; }, accept ? "every graph" : "no graph"};
}

}  // namespace

ZooEntry trivial_accept(std::vector<std::string> alphabet) { return trivial(true, std::move(alphabet)); }
ZooEntry trivial_reject(std::vector<std::string> alphabet) { return trivial(false, std::move(alphabet)); }

// ---- random machines ----------------------------------------------------------

Machine random_machine(std::uint64_t seed, const RandomMachineSpec& spec) {
  if (spec.states < 1 || spec.states > 8) throw DomainError("random machine: states must be in 1..8");
  if (spec.beta < 1 || spec.beta > 3) throw DomainError("random machine: beta must be in 1..3");
  if (spec.alphabet.empty()) throw DomainError("random machine: empty alphabet");
  std::mt19937_64 rng(seed);
  const auto n = spec.states;
  std::vector<StateId> table(DenseTableTransition::table_size(n, spec.beta));
  for (auto& t : table) t = static_cast<StateId>(uniform_below(rng, n));
  MachineDef def;
  def.name = "random-" + std::to_string(seed);
  for (std::size_t q = 0; q < n; ++q) def.states.push_back("s" + std::to_string(q));
  def.alphabet = spec.alphabet;
  def.beta = spec.beta;
  for (std::size_t a = 0; a < spec.alphabet.size(); ++a) {
    def.init.push_back(static_cast<StateId>(uniform_below(rng, n)));
  }
  if (spec.verdict_sets) {
    for (std::size_t q = 0; q < n; ++q) {
      const auto r = uniform_below(rng, 3);
      if (r == 0) def.accepting.push_back(static_cast<StateId>(q));
      if (r == 1) def.rejecting.push_back(static_cast<StateId>(q));
    }
  }
  def.delta = std::make_shared<DenseTableTransition>(n, spec.beta, std::move(table));
  def.origin = builtin_ref("random", {{"seed", static_cast<std::int64_t>(seed)},
                                      {"states", static_cast<std::int64_t>(n)},
                                      {"beta", spec.beta},
                                      {"verdict_sets", spec.verdict_sets ? 1 : 0}},
                            spec.alphabet);
  return Machine(std::move(def));
}

std::pair<Machine, std::uint64_t> random_consistent_machine(
    std::uint64_t seed, const RandomMachineSpec& spec, const ModelClass& mc,
    const std::vector<LabeledGraph>& graphs, int max_tries) {
  std::mt19937_64 seeds(seed);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    const auto s = seeds();
    auto m = random_machine(s, spec);
    if (!check_model_class(m, mc).empty()) continue;
    bool ok = true;
    for (const auto& g : graphs) {
      const auto v = decide(m, g, mc);
      if (v.outcome != Outcome::Accept && v.outcome != Outcome::Reject) {
        ok = false;
        break;
      }
    }
    if (ok) return {m, s};
  }
  throw Error("no consistent random machine found in " + std::to_string(max_tries) + " tries");
}

// ---- registry -------------------------------------------------------------------

std::vector<std::string> zoo_names() {
  return {"black-detector", "star-stabilizing", "star-halting", "even-star", "even-star-liberal",
          "c3",             "oscillator",       "trivial-accept", "trivial-reject"};
}

ZooEntry zoo_entry(const std::string& name) {
  if (name == "black-detector") return black_detector();
  if (name == "star-stabilizing") return star_recognizer_stabilizing();
  if (name == "star-halting") return star_recognizer_halting();
  if (name == "even-star") return even_star_counter();
  if (name == "even-star-liberal") return even_star_counter_liberal();
  if (name == "c3") return c3_recognizer();
  if (name == "oscillator") return oscillator_halt();
  if (name == "trivial-accept") return trivial_accept();
  if (name == "trivial-reject") return trivial_reject();
  throw DomainError("unknown zoo machine '" + name + "'");
}

Machine builtin_machine(const std::string& name, const std::map<std::string, std::int64_t>& params,
                        const std::vector<std::string>& alphabet) {
  auto param = [&](const std::string& key, std::int64_t fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "random") {
    RandomMachineSpec spec;
    spec.states = static_cast<std::size_t>(param("states", 3));
    spec.beta = static_cast<int>(param("beta", 1));
    spec.verdict_sets = param("verdict_sets", 1) != 0;
    if (!alphabet.empty()) spec.alphabet = alphabet;
    return random_machine(static_cast<std::uint64_t>(param("seed", 0)), spec);
  }
  if ((name == "trivial-accept" || name == "trivial-reject") && !alphabet.empty()) {
    return name == "trivial-accept" ? trivial_accept(alphabet).machine : trivial_reject(alphabet).machine;
  }
  return zoo_entry(name).machine;
}

}  // namespace distaut
