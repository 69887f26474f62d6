#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "distaut/machine.hpp"

namespace distaut {

enum class Comparator { Eq, Ge, Le };

struct Guard {
  std::string state;
  Comparator op = Comparator::Ge;
  int threshold = 1;
};

// Fires when every guard holds on the neighborhood. Rules for the same
// source state are tried in order; no match means the node keeps its state.
struct Rule {
  std::string from;
  std::vector<Guard> guards;
  std::string to;
};

struct MachineHeader {
  std::string name;
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  int beta = 1;
  std::map<std::string, std::string> init;  // label -> state
  std::vector<std::string> accepting;
  std::vector<std::string> rejecting;
};

struct RuleTable {
  std::vector<Rule> rules;
};

// Throws ValidationError listing unknown states, thresholds above beta, ...
Machine compile_rule_table(const RuleTable& table, const MachineHeader& header);

MachineHeader header_of(const Machine& m);

// The rules a machine was compiled from, or null if it was built otherwise.
const RuleTable* rule_table_of(const Machine& m);

// The full map (q, P) -> q' over all beta-bounded P. Only for machines with
// |Q| * (beta+1)^|Q| <= cap; throws TooLarge otherwise.
struct ExplicitTable {
  struct Entry {
    StateId from;
    std::vector<int> counts;  // indexed by state
    StateId to;
  };
  std::vector<Entry> entries;
};

ExplicitTable export_table(const Machine& m, std::size_t cap = 1'000'000);
bool table_enumerable(const Machine& m, std::size_t cap = 1'000'000);

// Rule-table form with one all-equality rule per entry. Entries that keep
// the state are dropped when skip_stays is set, since that is the default.
RuleTable to_rule_table(const Machine& m, const ExplicitTable& table, bool skip_stays = true);

// Dense lookup over (q, encoded P). Used for random machines and for
// compiled exports.
class DenseTableTransition : public TransitionFunction {
 public:
  DenseTableTransition(std::size_t state_count, int beta, std::vector<StateId> table);
  StateId next(StateId q, const BoundedMultiset& neighbors) const override;
  std::size_t index(StateId q, const BoundedMultiset& neighbors) const;
  static std::size_t table_size(std::size_t state_count, int beta);

 private:
  std::size_t states_;
  int beta_;
  std::vector<StateId> table_;
};

}  // namespace distaut
