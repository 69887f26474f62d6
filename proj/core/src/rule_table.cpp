#include "distaut/rule_table.hpp"

#include <algorithm>
#include <set>

#include "distaut/errors.hpp"

namespace distaut {

namespace {

struct CompiledGuard {
  StateId state;
  Comparator op;
  int threshold;
};

struct CompiledRule {
  std::vector<CompiledGuard> guards;
  StateId to;
};

class RuleTableTransition : public TransitionFunction {
 public:
  RuleTableTransition(std::vector<std::vector<CompiledRule>> rules, RuleTable source)
      : rules_(std::move(rules)), source_(std::move(source)) {}

  const RuleTable& source() const { return source_; }

  StateId next(StateId q, const BoundedMultiset& p) const override {
    for (const auto& rule : rules_[q]) {
      bool fires = true;
      for (const auto& g : rule.guards) {
        const int c = p.count(g.state);
        switch (g.op) {
          case Comparator::Eq: fires = c == g.threshold; break;
          case Comparator::Ge: fires = c >= g.threshold; break;
          case Comparator::Le: fires = c <= g.threshold; break;
        }
        if (!fires) break;
      }
      if (fires) return rule.to;
    }
    return q;
  }

  std::optional<bool> is_trap(StateId q) const override {
    return std::all_of(rules_[q].begin(), rules_[q].end(),
                       [q](const CompiledRule& r) { return r.to == q; });
  }

  std::optional<std::vector<StateId>> observed_states(StateId q) const override {
    std::set<StateId> s;
    for (const auto& r : rules_[q]) {
      for (const auto& g : r.guards) s.insert(g.state);
    }
    return std::vector<StateId>(s.begin(), s.end());
  }

 private:
  std::vector<std::vector<CompiledRule>> rules_;
  RuleTable source_;
};

}  // namespace

Machine compile_rule_table(const RuleTable& table, const MachineHeader& header) {
  std::vector<std::string> problems;
  std::map<std::string, StateId> index;
  for (std::size_t i = 0; i < header.states.size(); ++i) {
    index.emplace(header.states[i], static_cast<StateId>(i));
  }
  auto lookup = [&](const std::string& name, const std::string& where) -> StateId {
    auto it = index.find(name);
    if (it == index.end()) {
      problems.push_back(where + ": unknown state '" + name + "'");
      return 0;
    }
    return it->second;
  };

  std::vector<std::vector<CompiledRule>> rules(header.states.size());
  for (std::size_t i = 0; i < table.rules.size(); ++i) {
    const auto& r = table.rules[i];
    const auto where = "rule " + std::to_string(i);
    CompiledRule c;
    const auto from = lookup(r.from, where);
    c.to = lookup(r.to, where);
    for (const auto& g : r.guards) {
      if (g.threshold < 0 || g.threshold > header.beta) {
        problems.push_back(where + ": threshold " + std::to_string(g.threshold) + " for '" +
                           g.state + "' outside [0, beta=" + std::to_string(header.beta) + "]");
      }
      c.guards.push_back({lookup(g.state, where), g.op, g.threshold});
    }
    if (from < rules.size()) rules[from].push_back(std::move(c));
  }

  MachineDef def;
  def.name = header.name;
  def.states = header.states;
  def.alphabet = header.alphabet;
  def.beta = header.beta;
  for (const auto& a : header.alphabet) {
    auto it = header.init.find(a);
    if (it == header.init.end()) {
      problems.push_back("no initial state for label '" + a + "'");
      def.init.push_back(0);
    } else {
      def.init.push_back(lookup(it->second, "init"));
    }
  }
  for (const auto& [label, state] : header.init) {
    if (std::find(header.alphabet.begin(), header.alphabet.end(), label) ==
        header.alphabet.end()) {
      problems.push_back("init names label '" + label + "' outside the alphabet");
    }
  }
  for (const auto& s : header.accepting) def.accepting.push_back(lookup(s, "accepting"));
  for (const auto& s : header.rejecting) def.rejecting.push_back(lookup(s, "rejecting"));
  if (!problems.empty()) throw ValidationError(std::move(problems));
  def.delta = std::make_shared<RuleTableTransition>(std::move(rules), table);
  return Machine(std::move(def));
}

const RuleTable* rule_table_of(const Machine& m) {
  const auto* t = dynamic_cast<const RuleTableTransition*>(&m.delta());
  return t ? &t->source() : nullptr;
}

MachineHeader header_of(const Machine& m) {
  MachineHeader h;
  h.name = m.name();
  h.states = m.states();
  h.alphabet = m.alphabet();
  h.beta = m.beta();
  for (std::size_t i = 0; i < m.alphabet().size(); ++i) {
    h.init[m.alphabet()[i]] = m.state_name(m.init()[i]);
  }
  for (auto q : m.accepting()) h.accepting.push_back(m.state_name(q));
  for (auto q : m.rejecting()) h.rejecting.push_back(m.state_name(q));
  return h;
}

bool table_enumerable(const Machine& m, std::size_t cap) {
  std::size_t total = m.state_count();
  const auto base = static_cast<std::size_t>(m.beta()) + 1;
  for (std::size_t i = 0; i < m.state_count(); ++i) {
    if (total > cap / base) return false;
    total *= base;
  }
  return total <= cap;
}

ExplicitTable export_table(const Machine& m, std::size_t cap) {
  if (!table_enumerable(m, cap)) {
    throw TooLarge("explicit table of " + m.name() + " exceeds " + std::to_string(cap) +
                   " entries");
  }
  ExplicitTable t;
  for (std::size_t q = 0; q < m.state_count(); ++q) {
    for_each_multiset(m, {}, cap, [&](const BoundedMultiset& p) {
      ExplicitTable::Entry e;
      e.from = static_cast<StateId>(q);
      e.counts.assign(m.state_count(), 0);
      for (const auto& x : p.entries()) e.counts[x.state] = x.count;
      e.to = m.next(e.from, p);
      t.entries.push_back(std::move(e));
    });
  }
  return t;
}

RuleTable to_rule_table(const Machine& m, const ExplicitTable& table, bool skip_stays) {
  RuleTable rt;
  for (const auto& e : table.entries) {
    if (skip_stays && e.to == e.from) continue;
    Rule r;
    r.from = m.state_name(e.from);
    r.to = m.state_name(e.to);
    for (std::size_t s = 0; s < e.counts.size(); ++s) {
      r.guards.push_back({m.state_name(static_cast<StateId>(s)), Comparator::Eq, e.counts[s]});
    }
    rt.rules.push_back(std::move(r));
  }
  return rt;
}

DenseTableTransition::DenseTableTransition(std::size_t state_count, int beta,
                                           std::vector<StateId> table)
    : states_(state_count), beta_(beta), table_(std::move(table)) {
  if (table_.size() != table_size(state_count, beta)) {
    throw DomainError("dense table has the wrong size");
  }
}

std::size_t DenseTableTransition::table_size(std::size_t state_count, int beta) {
  std::size_t n = state_count;
  for (std::size_t i = 0; i < state_count; ++i) n *= static_cast<std::size_t>(beta) + 1;
  return n;
}

std::size_t DenseTableTransition::index(StateId q, const BoundedMultiset& p) const {
  // Digit s of the code is the capped count of state s.
  std::size_t code = 0;
  std::size_t weight = 1;
  std::size_t s = 0;
  for (const auto& e : p.entries()) {
    while (s < e.state) {
      weight *= static_cast<std::size_t>(beta_) + 1;
      ++s;
    }
    code += weight * std::min<int>(e.count, beta_);
  }
  for (; s < states_; ++s) weight *= static_cast<std::size_t>(beta_) + 1;
  return static_cast<std::size_t>(q) * weight + code;
}

StateId DenseTableTransition::next(StateId q, const BoundedMultiset& p) const {
  return table_[index(q, p)];
}

}  // namespace distaut
