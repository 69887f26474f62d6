#include "distaut/popproto.hpp"

#include <algorithm>

#include "distaut/errors.hpp"
#include "distaut/exploration.hpp"

namespace distaut {

PopulationProtocol::PopulationProtocol(std::string name, std::vector<std::string> states,
                                       std::vector<std::string> alphabet, std::vector<StateId> init,
                                       std::vector<StateId> accepting, std::vector<StateId> rejecting,
                                       const std::vector<PairRule>& rules)
    : name_(std::move(name)),
      states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      init_(std::move(init)),
      accepting_(std::move(accepting)),
      rejecting_(std::move(rejecting)) {
  const auto n = states_.size();
  std::vector<std::string> violations;
  if (n == 0) violations.push_back("no states");
  if (init_.size() != alphabet_.size()) violations.push_back("init must give a state per label");
  flags_.assign(n, 0);
  auto check = [&](StateId q, const char* what) {
    if (q >= n) violations.push_back(std::string(what) + " refers to state " + std::to_string(q));
  };
  for (auto q : init_) check(q, "init");
  for (auto q : accepting_) {
    check(q, "accepting");
    if (q < n) flags_[q] |= 1;
  }
  for (auto q : rejecting_) {
    check(q, "rejecting");
    if (q < n) {
      if (flags_[q] & 1) violations.push_back("state " + states_[q] + " is both accepting and rejecting");
      flags_[q] |= 2;
    }
  }
  table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      table_[a * n + b] = {static_cast<StateId>(a), static_cast<StateId>(b)};
    }
  }
  std::vector<char> seen(n * n, 0);
  for (const auto& r : rules) {
    check(r.lhs_initiator, "rule");
    check(r.lhs_responder, "rule");
    check(r.rhs_initiator, "rule");
    check(r.rhs_responder, "rule");
    if (r.lhs_initiator >= n || r.lhs_responder >= n) continue;
    const auto k = r.lhs_initiator * n + r.lhs_responder;
    if (seen[k]) violations.push_back("two rules for the pair (" + states_[r.lhs_initiator] + "," +
                                      states_[r.lhs_responder] + ")");
    seen[k] = 1;
    table_[k] = {r.rhs_initiator, r.rhs_responder};
  }
  if (!violations.empty()) throw ValidationError(violations);
}

StateId PopulationProtocol::init_state(const std::string& label) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), label);
  if (it == alphabet_.end()) throw DomainError("label '" + label + "' is not in the protocol alphabet");
  return init_[static_cast<std::size_t>(it - alphabet_.begin())];
}

std::vector<PopulationProtocol::PairRule> PopulationProtocol::rules() const {
  std::vector<PairRule> out;
  const auto n = states_.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto [x, y] = table_[a * n + b];
      if (x != a || y != b) out.push_back({static_cast<StateId>(a), static_cast<StateId>(b), x, y});
    }
  }
  return out;
}

Configuration pp_initial_configuration(const PopulationProtocol& p, const LabeledGraph& g) {
  std::vector<StateId> c(g.node_count());
  for (std::size_t v = 0; v < c.size(); ++v) c[v] = p.init_state(g.label(static_cast<NodeIndex>(v)));
  return Configuration(std::move(c));
}

Configuration pp_step(const Configuration& c, PairSelection s, const PopulationProtocol& p,
                      const LabeledGraph& g) {
  if (s.initiator >= g.node_count() || s.responder >= g.node_count() || s.initiator == s.responder ||
      !g.adjacent(s.initiator, s.responder)) {
    throw DomainError("pair selection must name two adjacent nodes");
  }
  auto out = c;
  const auto [a, b] = p.delta(c[s.initiator], c[s.responder]);
  out[s.initiator] = a;
  out[s.responder] = b;
  return out;
}

namespace {

class ProtocolSystem : public TransitionSystem {
 public:
  ProtocolSystem(const PopulationProtocol& p, const LabeledGraph& g) : p_(p), g_(g) {
    for (const auto& [u, v] : g.edges()) {
      pairs_.push_back({u, v});
      pairs_.push_back({v, u});
    }
    init_ = pp_initial_configuration(p, g).states();
  }
  std::size_t width() const override { return g_.node_count(); }
  std::size_t aux_width() const override { return 0; }
  std::size_t node_count() const override { return g_.node_count(); }
  void initial(StateId* out) const override { std::copy(init_.begin(), init_.end(), out); }
  std::uint32_t prepare(const StateId*, StateId*) const override {
    return static_cast<std::uint32_t>(pairs_.size());
  }
  NodeMask successor(const StateId* c, const StateId*, std::uint32_t i, StateId* out) const override {
    std::copy(c, c + g_.node_count(), out);
    const auto s = pairs_[i];
    const auto [a, b] = p_.delta(c[s.initiator], c[s.responder]);
    out[s.initiator] = a;
    out[s.responder] = b;
    return (NodeMask{1} << s.initiator) | (NodeMask{1} << s.responder);
  }
  Selection realize(const StateId*, const StateId*, std::uint32_t i, NodeMask) const override {
    // Initiator first; the order matters for the reader, not for Selection.
    return {pairs_[i].initiator, pairs_[i].responder};
  }
  bool accepting(const StateId* c) const override {
    for (std::size_t v = 0; v < g_.node_count(); ++v) {
      if (!p_.is_accepting(c[v])) return false;
    }
    return true;
  }
  bool rejecting(const StateId* c) const override {
    for (std::size_t v = 0; v < g_.node_count(); ++v) {
      if (!p_.is_rejecting(c[v])) return false;
    }
    return true;
  }

 private:
  const PopulationProtocol& p_;
  const LabeledGraph& g_;
  std::vector<PairSelection> pairs_;
  std::vector<StateId> init_;
};

}  // namespace

Verdict pp_decide(const PopulationProtocol& p, const LabeledGraph& g, std::size_t max_configs) {
  require_valid(g);
  if (g.node_count() > 64) throw TooLarge("exact decision is limited to graphs with 64 nodes");
  ProtocolSystem ts(p, g);
  Verdict v;
  try {
    const auto ex = explore(ts, max_configs);
    v.configurations = ex.store.size();
    bool accept_fails = false;
    bool reject_fails = false;
    for (const auto& comp : ex.components) {
      if (!comp.bottom) continue;
      accept_fails = accept_fails || comp.non_accepting != kNoVertex;
      reject_fails = reject_fails || comp.non_rejecting != kNoVertex;
    }
    if (!accept_fails) v.outcome = Outcome::Accept;
    else if (!reject_fails) v.outcome = Outcome::Reject;
    else v.outcome = Outcome::Inconsistent;
  } catch (const TooLarge& e) {
    v.outcome = Outcome::TooLarge;
    v.note = e.what();
  }
  return v;
}

// ---- example protocols ------------------------------------------------------

PopulationProtocol parity_protocol() {
  // A0 A1: token with value; P0 P1: passive holding the last value seen.
  enum : StateId { A0, A1, P0, P1 };
  auto active = [](int v) { return static_cast<StateId>(v ? A1 : A0); };
  auto passive = [](int v) { return static_cast<StateId>(v ? P1 : P0); };
  std::vector<PopulationProtocol::PairRule> rules;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      rules.push_back({active(a), active(b), active(a ^ b), passive(a ^ b)});
      rules.push_back({active(a), passive(b), passive(a), active(a)});
      rules.push_back({passive(b), active(a), active(a), passive(a)});
    }
  }
  return PopulationProtocol("parity", {"A0", "A1", "P0", "P1"}, {"black", "white"}, {A1, P0},
                            {A0, P0}, {A1, P1}, rules);
}

PopulationProtocol threshold_protocol(int c) {
  if (c < 1 || c > 4) throw DomainError("threshold protocol: c must be in 1..4");
  // A1..Ac are tokens carrying a saturated count, then P0 P1.
  std::vector<std::string> names;
  for (int i = 1; i <= c; ++i) names.push_back("A" + std::to_string(i));
  names.push_back("P0");
  names.push_back("P1");
  auto active = [](int i) { return static_cast<StateId>(i - 1); };
  const auto p0 = static_cast<StateId>(c);
  const auto p1 = static_cast<StateId>(c + 1);
  auto passive = [&](bool reached) { return reached ? p1 : p0; };
  std::vector<PopulationProtocol::PairRule> rules;
  for (int i = 1; i <= c; ++i) {
    for (int j = 1; j <= c; ++j) {
      const int sum = std::min(c, i + j);
      rules.push_back({active(i), active(j), active(sum), passive(i + j >= c)});
    }
    for (bool b : {false, true}) {
      rules.push_back({active(i), passive(b), passive(i >= c), active(i)});
      rules.push_back({passive(b), active(i), active(i), passive(i >= c)});
    }
  }
  std::vector<StateId> rejecting;
  for (int i = 1; i < c; ++i) rejecting.push_back(active(i));
  rejecting.push_back(p0);
  return PopulationProtocol("threshold-" + std::to_string(c), names, {"black", "white"},
                            {active(1), p0}, {active(c), p1}, rejecting, rules);
}

PopulationProtocol identity_protocol() {
  return PopulationProtocol("identity", {"a", "b"}, {"black", "white"}, {0, 1}, {0, 1}, {}, {});
}

// ---- embedding into a distributed machine -------------------------------------

Machine popproto_to_automaton(const PopulationProtocol& p) {
  const auto n = p.state_count();
  if (4 * n + n * n > 65535) throw TooLarge("popproto: too many states");
  // q | (q,?) | (q,!) | (q,err) | <q,q'>
  const auto req = [n](std::size_t q) { return static_cast<StateId>(n + q); };
  const auto ack = [n](std::size_t q) { return static_cast<StateId>(2 * n + q); };
  const auto err = [n](std::size_t q) { return static_cast<StateId>(3 * n + q); };
  const auto pair = [n](std::size_t q, std::size_t r) { return static_cast<StateId>(4 * n + q * n + r); };

  MachineDef def;
  def.name = "popproto(" + p.name() + ")";
  def.alphabet = p.alphabet();
  def.beta = 2;
  def.init = p.init();
  def.states.resize(4 * n + n * n);
  auto mark = [&](StateId s, bool acc, bool rej) {
    if (acc) def.accepting.push_back(s);
    if (rej) def.rejecting.push_back(s);
  };
  for (std::size_t q = 0; q < n; ++q) {
    const auto& name = p.state_name(static_cast<StateId>(q));
    const bool acc = p.is_accepting(static_cast<StateId>(q));
    const bool rej = p.is_rejecting(static_cast<StateId>(q));
    def.states[q] = name;
    def.states[req(q)] = "(" + name + ",?)";
    def.states[ack(q)] = "(" + name + ",!)";
    def.states[err(q)] = "(" + name + ",err)";
    for (StateId s : {static_cast<StateId>(q), req(q), ack(q), err(q)}) mark(s, acc, rej);
  }
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t r = 0; r < n; ++r) {
      def.states[pair(q, r)] = "<" + p.state_name(static_cast<StateId>(q)) + "," +
                               p.state_name(static_cast<StateId>(r)) + ">";
      mark(pair(q, r), p.is_accepting(static_cast<StateId>(q)) && p.is_accepting(static_cast<StateId>(r)),
           p.is_rejecting(static_cast<StateId>(q)) && p.is_rejecting(static_cast<StateId>(r)));
    }
  }

  def.delta = std::make_shared<ClosureTransition>([p, n](StateId s, const BoundedMultiset& nb) -> StateId {
    enum Kind { Plain, Req, Ack, Err, Pair };
    auto kind = [n](StateId t) {
      return t < n ? Plain : t < 2 * n ? Req : t < 3 * n ? Ack : t < 4 * n ? Err : Pair;
    };
    int count[5] = {0, 0, 0, 0, 0};  // capped at 2 per kind
    StateId last[5] = {0, 0, 0, 0, 0};
    for (const auto& e : nb.entries()) {
      const auto k = kind(e.state);
      count[k] = std::min(2, count[k] + e.count);
      last[k] = e.state;
    }
    const bool others_plain = count[Req] + count[Ack] + count[Err] + count[Pair] == 0;
    auto exactly_one = [&](Kind k) {
      int rest = 0;
      for (int j = 1; j < 5; ++j) {
        if (j != k) rest += count[j];
      }
      return count[k] == 1 && rest == 0;
    };
    switch (kind(s)) {
      case Plain: {
        if (others_plain) return static_cast<StateId>(n + s);                 // 1a request
        if (exactly_one(Req)) return static_cast<StateId>(2 * n + s);         // 1b accept
        if (count[Req] >= 2) return static_cast<StateId>(3 * n + s);          // 1c error
        return s;                                                             // 1d
      }
      case Req: {
        const auto q = static_cast<StateId>(s - n);
        if (others_plain) return s;                                           // 2a
        if (exactly_one(Ack)) {                                               // 2b
          const auto partner = static_cast<StateId>(last[Ack] - 2 * n);
          return static_cast<StateId>(4 * n + q * n + p.delta(q, partner).first);
        }
        return static_cast<StateId>(3 * n + q);                               // 2c
      }
      case Ack: {
        const auto q = static_cast<StateId>(s - 2 * n);
        if (exactly_one(Req)) return s;                                       // 3a
        if (exactly_one(Pair)) {                                              // 3b
          const auto initiator = static_cast<StateId>((last[Pair] - 4 * n) / n);
          return p.delta(initiator, q).second;
        }
        return q;                                                             // 3c
      }
      case Err: {
        const auto q = static_cast<StateId>(s - 3 * n);
        if (count[Req] + count[Ack] > 0) return s;                            // 4a
        return q;                                                             // 4b
      }
      case Pair: {
        if (count[Ack] > 0) return s;                                         // 5a
        return static_cast<StateId>((s - 4 * n) % n);                         // 5b
      }
    }
    return s;
  });
  auto ref = std::make_shared<MachineRef>();
  ref->kind = "transform";
  ref->name = "from-popproto";
  auto source = std::make_shared<MachineRef>();
  source->kind = "protocol";
  source->name = p.name();
  ref->inputs.push_back(source);
  def.origin = ref;
  return Machine(std::move(def));
}

}  // namespace distaut
