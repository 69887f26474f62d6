#include "distaut/machine.hpp"

#include <algorithm>
#include <set>

#include "distaut/errors.hpp"

namespace distaut {

BoundedMultiset::BoundedMultiset(int beta) : beta_(beta) {
  if (beta < 1 || beta > 255) throw DomainError("counting bound must be in [1, 255]");
}

void BoundedMultiset::add(StateId s, int n) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                             [](const Entry& e, StateId x) { return e.state < x; });
  if (it != entries_.end() && it->state == s) {
    it->count = static_cast<std::uint8_t>(std::min(beta_, it->count + n));
  } else if (n > 0) {
    entries_.insert(it, Entry{s, static_cast<std::uint8_t>(std::min(beta_, n))});
  }
}

int BoundedMultiset::count(StateId s) const {
  for (const auto& e : entries_) {
    if (e.state == s) return e.count;
    if (e.state > s) break;
  }
  return 0;
}

int BoundedMultiset::total() const {
  int t = 0;
  for (const auto& e : entries_) t += e.count;
  return t;
}

ClosureTransition::ClosureTransition(TransitionFn fn, std::vector<StateId> traps)
    : fn_(std::move(fn)) {
  for (auto q : traps) {
    if (q >= trap_.size()) trap_.resize(q + 1, 0);
    trap_[q] = 1;
  }
}

StateId ClosureTransition::next(StateId q, const BoundedMultiset& neighbors) const {
  if (q < trap_.size() && trap_[q]) return q;
  return fn_(q, neighbors);
}

std::optional<bool> ClosureTransition::is_trap(StateId q) const {
  if (q < trap_.size() && trap_[q]) return true;
  return std::nullopt;
}

Machine::Machine(MachineDef def) {
  std::vector<std::string> problems;
  const auto n = def.states.size();
  if (n == 0) problems.emplace_back("machine has no states");
  if (n > 65535) problems.emplace_back("too many states");
  if (def.beta < 1 || def.beta > 255) problems.emplace_back("counting bound must be in [1, 255]");
  if (!def.delta) problems.emplace_back("missing transition function");
  if (def.init.size() != def.alphabet.size()) {
    problems.emplace_back("initialization must give one state per alphabet symbol");
  }
  for (auto q : def.init) {
    if (q >= n) problems.emplace_back("initial state out of range");
  }
  std::set<std::string> names(def.states.begin(), def.states.end());
  if (names.size() != n) problems.emplace_back("duplicate state names");
  flags_.assign(n, 0);
  for (auto q : def.accepting) {
    if (q >= n) problems.emplace_back("accepting state out of range");
    else flags_[q] |= 1;
  }
  for (auto q : def.rejecting) {
    if (q >= n) {
      problems.emplace_back("rejecting state out of range");
    } else {
      if (flags_[q] & 1) problems.push_back("state '" + def.states[q] + "' is both accepting and rejecting");
      flags_[q] |= 2;
    }
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  auto dedup = [](std::vector<StateId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(def.accepting);
  dedup(def.rejecting);
  def_ = std::make_shared<const MachineDef>(std::move(def));
}

std::optional<StateId> Machine::find_state(const std::string& name) const {
  const auto& s = def_->states;
  auto it = std::find(s.begin(), s.end(), name);
  if (it == s.end()) return std::nullopt;
  return static_cast<StateId>(it - s.begin());
}

std::optional<StateId> Machine::try_init_state(const std::string& label) const {
  const auto& a = def_->alphabet;
  auto it = std::find(a.begin(), a.end(), label);
  if (it == a.end()) return std::nullopt;
  return def_->init[static_cast<std::size_t>(it - a.begin())];
}

StateId Machine::init_state(const std::string& label) const {
  auto q = try_init_state(label);
  if (!q) throw DomainError("label '" + label + "' is not in the alphabet of " + name());
  return *q;
}

StateId Machine::next(StateId q, const BoundedMultiset& neighbors) const {
  StateId r;
  try {
    r = def_->delta->next(q, neighbors);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw EvaluationError("delta(" + state_name(q) + ", " + describe(neighbors) +
                          ") failed: " + e.what());
  }
  if (r >= state_count()) {
    throw EvaluationError("delta(" + state_name(q) + ", " + describe(neighbors) +
                          ") returned out-of-range state " + std::to_string(r));
  }
  return r;
}

Machine Machine::with_origin(std::shared_ptr<const MachineRef> origin) const {
  MachineDef def = *def_;
  def.origin = std::move(origin);
  return Machine(std::move(def));
}

std::string Machine::describe(const BoundedMultiset& p) const {
  std::string out = "{";
  bool first = true;
  for (const auto& e : p.entries()) {
    if (!first) out += ", ";
    first = false;
    out += (e.state < state_count() ? state_name(e.state) : std::to_string(e.state));
    out += ":" + std::to_string(e.count);
  }
  return out + "}";
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto s : c.states()) {
    h ^= s;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

void bounded_multiset(std::span<const StateId> c, NodeIndex v, const LabeledGraph& g,
                      BoundedMultiset& out) {
  out.clear();
  for (auto w : g.neighbors(v)) out.add(c[w]);
}

BoundedMultiset bounded_multiset(const Configuration& c, NodeIndex v, const LabeledGraph& g,
                                 int beta) {
  BoundedMultiset p(beta);
  bounded_multiset(c.span(), v, g, p);
  return p;
}

Configuration initial_configuration(const Machine& m, const LabeledGraph& g) {
  std::vector<StateId> states(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    auto q = m.try_init_state(g.label(v));
    if (!q) {
      throw DomainError("label '" + g.label(v) + "' of node '" + g.id(v) +
                        "' is not in the alphabet of machine " + m.name());
    }
    states[v] = *q;
  }
  return Configuration(std::move(states));
}

Configuration successor(const Configuration& c, std::span<const NodeIndex> selection,
                        const Machine& m, const LabeledGraph& g) {
  Configuration next = c;
  BoundedMultiset p(m.beta());
  for (auto v : selection) {
    if (v >= g.node_count()) throw DomainError("selection refers to a missing node");
    bounded_multiset(c.span(), v, g, p);
    next[v] = m.next(c[v], p);
  }
  return next;
}

bool is_accepting_configuration(const Configuration& c, const Machine& m) {
  return std::all_of(c.states().begin(), c.states().end(),
                     [&](StateId q) { return m.is_accepting(q); });
}

bool is_rejecting_configuration(const Configuration& c, const Machine& m) {
  return std::all_of(c.states().begin(), c.states().end(),
                     [&](StateId q) { return m.is_rejecting(q); });
}

bool for_each_multiset(const Machine& m, const std::vector<StateId>& support, std::size_t cap,
                       const std::function<void(const BoundedMultiset&)>& f) {
  std::vector<StateId> states = support;
  if (states.empty()) {
    for (std::size_t q = 0; q < m.state_count(); ++q) states.push_back(static_cast<StateId>(q));
  }
  const auto base = static_cast<std::size_t>(m.beta()) + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (total > cap / base) return false;
    total *= base;
  }
  std::vector<int> digits(states.size(), 0);
  BoundedMultiset p(m.beta());
  while (true) {
    p.clear();
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (digits[i]) p.add(states[i], digits[i]);
    }
    f(p);
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == static_cast<int>(base)) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return true;
}

HaltingReport check_halting(const Machine& m, std::size_t cap) {
  std::vector<StateId> terminal = m.accepting();
  terminal.insert(terminal.end(), m.rejecting().begin(), m.rejecting().end());
  for (auto q : terminal) {
    auto trap = m.delta().is_trap(q);
    if (trap && *trap) continue;
    auto support = m.delta().observed_states(q);
    std::vector<StateId> states = support ? *support : std::vector<StateId>{};
    if (support && states.empty()) {
      // next(q, .) ignores the neighborhood; one evaluation decides it.
      BoundedMultiset p(m.beta());
      if (m.next(q, p) != q) {
        return {HaltingStatus::NotHalting, "delta(" + m.state_name(q) + ", {}) leaves the state"};
      }
      continue;
    }
    HaltingReport report;
    bool ok = for_each_multiset(m, states, cap, [&](const BoundedMultiset& p) {
      if (report.status == HaltingStatus::NotHalting) return;
      if (m.next(q, p) != q) {
        report = {HaltingStatus::NotHalting,
                  "delta(" + m.state_name(q) + ", " + m.describe(p) + ") = " +
                      m.state_name(m.next(q, p))};
      }
    });
    if (!ok) {
      return {HaltingStatus::TooLarge,
              "halting check for state '" + m.state_name(q) + "' exceeds the enumeration cap"};
    }
    if (report.status == HaltingStatus::NotHalting) return report;
  }
  return {};
}

bool is_halting(const Machine& m, std::size_t cap) {
  auto report = check_halting(m, cap);
  if (report.status == HaltingStatus::TooLarge) throw TooLarge(report.detail);
  return report.status == HaltingStatus::Halting;
}

}  // namespace distaut
