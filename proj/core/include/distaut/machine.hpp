#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "distaut/graph.hpp"

namespace distaut {

using StateId = std::uint16_t;

// Neighborhood view: state -> count, each count capped at beta. Stored as a
// short sorted list since neighborhoods are small.
class BoundedMultiset {
 public:
  struct Entry {
    StateId state;
    std::uint8_t count;
    bool operator==(const Entry&) const = default;
  };

  explicit BoundedMultiset(int beta = 1);

  int beta() const { return beta_; }
  void clear() { entries_.clear(); }
  void add(StateId s, int n = 1);
  int count(StateId s) const;
  bool contains(StateId s) const { return count(s) > 0; }
  bool empty() const { return entries_.empty(); }
  // Sum of the capped counts.
  int total() const;
  std::span<const Entry> entries() const { return entries_; }

  bool operator==(const BoundedMultiset& other) const = default;

 private:
  std::vector<Entry> entries_;
  int beta_;
};

class TransitionFunction {
 public:
  virtual ~TransitionFunction() = default;
  virtual StateId next(StateId q, const BoundedMultiset& neighbors) const = 0;

  // true when q maps to itself for every neighborhood, if known cheaply.
  virtual std::optional<bool> is_trap(StateId) const { return std::nullopt; }

  // States whose counts can influence next(q, .), if known. Lets the
  // halting check enumerate only the relevant neighborhoods.
  virtual std::optional<std::vector<StateId>> observed_states(StateId) const {
    return std::nullopt;
  }
};

using TransitionFn = std::function<StateId(StateId, const BoundedMultiset&)>;

// Wraps a callable. States in `traps` are returned unchanged without
// calling fn, so machines built this way halt by construction.
class ClosureTransition : public TransitionFunction {
 public:
  ClosureTransition(TransitionFn fn, std::vector<StateId> traps = {});
  StateId next(StateId q, const BoundedMultiset& neighbors) const override;
  std::optional<bool> is_trap(StateId q) const override;

 private:
  TransitionFn fn_;
  std::vector<char> trap_;
};

class Machine;

// How a machine was obtained, so builtins and transform results can be
// written back out by name.
struct MachineRef {
  std::string kind;  // "builtin", "transform", "protocol" or "inline"
  std::string name;
  std::map<std::string, std::int64_t> params;
  std::vector<std::shared_ptr<const MachineRef>> inputs;
  std::vector<std::string> alphabet;       // builtins that take an alphabet
  std::shared_ptr<const Machine> machine;  // "inline": a machine with no recipe
};

struct MachineDef {
  std::string name;
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  int beta = 1;
  std::vector<StateId> init;  // parallel to alphabet
  std::vector<StateId> accepting;
  std::vector<StateId> rejecting;
  std::shared_ptr<const TransitionFunction> delta;
  std::shared_ptr<const MachineRef> origin;
};

// Immutable distributed machine (Q, beta, delta0, delta, Y, N).
class Machine {
 public:
  explicit Machine(MachineDef def);

  const std::string& name() const { return def_->name; }
  std::size_t state_count() const { return def_->states.size(); }
  const std::vector<std::string>& states() const { return def_->states; }
  const std::string& state_name(StateId q) const { return def_->states[q]; }
  std::optional<StateId> find_state(const std::string& name) const;
  const std::vector<std::string>& alphabet() const { return def_->alphabet; }
  int beta() const { return def_->beta; }
  StateId init_state(const std::string& label) const;
  std::optional<StateId> try_init_state(const std::string& label) const;
  const std::vector<StateId>& init() const { return def_->init; }

  bool is_accepting(StateId q) const { return flags_[q] & 1; }
  bool is_rejecting(StateId q) const { return flags_[q] & 2; }
  const std::vector<StateId>& accepting() const { return def_->accepting; }
  const std::vector<StateId>& rejecting() const { return def_->rejecting; }

  // Checked evaluation: throws EvaluationError naming (q, P) on bad output.
  StateId next(StateId q, const BoundedMultiset& neighbors) const;
  const TransitionFunction& delta() const { return *def_->delta; }
  std::shared_ptr<const TransitionFunction> delta_ptr() const { return def_->delta; }
  const std::shared_ptr<const MachineRef>& origin() const { return def_->origin; }

  Machine with_origin(std::shared_ptr<const MachineRef> origin) const;

  std::string describe(const BoundedMultiset& p) const;

 private:
  std::shared_ptr<const MachineDef> def_;
  std::vector<std::uint8_t> flags_;
};

class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<StateId> states) : states_(std::move(states)) {}

  std::size_t size() const { return states_.size(); }
  StateId operator[](std::size_t v) const { return states_[v]; }
  StateId& operator[](std::size_t v) { return states_[v]; }
  const std::vector<StateId>& states() const { return states_; }
  std::span<const StateId> span() const { return states_; }

  bool operator==(const Configuration&) const = default;

 private:
  std::vector<StateId> states_;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const;
};

// Fills `out` (whose beta is reset to `beta`) with the capped neighborhood of v.
void bounded_multiset(std::span<const StateId> c, NodeIndex v, const LabeledGraph& g,
                      BoundedMultiset& out);
BoundedMultiset bounded_multiset(const Configuration& c, NodeIndex v, const LabeledGraph& g,
                                 int beta);

Configuration initial_configuration(const Machine& m, const LabeledGraph& g);

// Selected nodes all read the old configuration.
Configuration successor(const Configuration& c, std::span<const NodeIndex> selection,
                        const Machine& m, const LabeledGraph& g);

bool is_accepting_configuration(const Configuration& c, const Machine& m);
bool is_rejecting_configuration(const Configuration& c, const Machine& m);

enum class HaltingStatus { Halting, NotHalting, TooLarge };

struct HaltingReport {
  HaltingStatus status = HaltingStatus::Halting;
  std::string detail;  // offending (q, P) when NotHalting
};

// Every state in Y and N must map to itself for all neighborhoods.
HaltingReport check_halting(const Machine& m, std::size_t cap = 1'000'000);
bool is_halting(const Machine& m, std::size_t cap = 1'000'000);

// Calls f(P) for every beta-bounded multiset over `support` (all states if
// empty). Returns false if the count exceeds cap (nothing is called then).
bool for_each_multiset(const Machine& m, const std::vector<StateId>& support, std::size_t cap,
                       const std::function<void(const BoundedMultiset&)>& f);

}  // namespace distaut
