#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "distaut/graph.hpp"
#include "distaut/machine.hpp"
#include "distaut/verdict.hpp"

namespace distaut {

// Graph population protocol: an ordered adjacent pair (initiator, responder)
// is selected and both update through delta: Q^2 -> Q^2.
class PopulationProtocol {
 public:
  struct PairRule {
    StateId lhs_initiator, lhs_responder, rhs_initiator, rhs_responder;
  };

  PopulationProtocol(std::string name, std::vector<std::string> states,
                     std::vector<std::string> alphabet, std::vector<StateId> init,
                     std::vector<StateId> accepting, std::vector<StateId> rejecting,
                     const std::vector<PairRule>& rules);

  const std::string& name() const { return name_; }
  std::size_t state_count() const { return states_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::string& state_name(StateId q) const { return states_[q]; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<StateId>& init() const { return init_; }
  StateId init_state(const std::string& label) const;
  bool is_accepting(StateId q) const { return flags_[q] & 1; }
  bool is_rejecting(StateId q) const { return flags_[q] & 2; }
  const std::vector<StateId>& accepting() const { return accepting_; }
  const std::vector<StateId>& rejecting() const { return rejecting_; }

  std::pair<StateId, StateId> delta(StateId initiator, StateId responder) const {
    return table_[initiator * states_.size() + responder];
  }
  // Rules that change something, in (initiator, responder) order.
  std::vector<PairRule> rules() const;

 private:
  std::string name_;
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::vector<StateId> init_;
  std::vector<StateId> accepting_;
  std::vector<StateId> rejecting_;
  std::vector<std::uint8_t> flags_;
  std::vector<std::pair<StateId, StateId>> table_;
};

struct PairSelection {
  NodeIndex initiator;
  NodeIndex responder;
};

Configuration pp_initial_configuration(const PopulationProtocol& p, const LabeledGraph& g);
// Throws DomainError unless the two nodes are distinct and adjacent.
Configuration pp_step(const Configuration& c, PairSelection s, const PopulationProtocol& p,
                      const LabeledGraph& g);

// Bottom-component analysis over all ordered adjacent pairs.
Verdict pp_decide(const PopulationProtocol& p, const LabeledGraph& g,
                  std::size_t max_configs = 2'000'000);

// Black nodes start with a token of value 1; merging tokens add mod 2 and
// a token moves on every meeting with a passive node, leaving its value.
// Accepts iff the number of black nodes is even.
PopulationProtocol parity_protocol();
// Accepts iff at least c nodes are black, 1 <= c <= 4.
PopulationProtocol threshold_protocol(int c);
// Every pair keeps its states. Y = all states.
PopulationProtocol identity_protocol();

// Q' = Q u Q x {?, !, err} u Q^2 with beta = 2, for exclusive selection.
Machine popproto_to_automaton(const PopulationProtocol& p);

}  // namespace distaut
