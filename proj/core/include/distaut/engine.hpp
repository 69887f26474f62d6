#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "distaut/graph.hpp"
#include "distaut/machine.hpp"

namespace distaut {

enum class Detection { Set, Multiset };
enum class Acceptance { Halting, Stabilizing };
enum class SelectionKind { Liberal, Exclusive, Synchronous };
enum class Fairness { Weak, Strong };

// Written "detection.acceptance.selection.fairness",
// e.g. "multiset.halting.liberal.strong".
struct ModelClass {
  Detection detection = Detection::Multiset;
  Acceptance acceptance = Acceptance::Stabilizing;
  SelectionKind selection = SelectionKind::Liberal;
  Fairness fairness = Fairness::Strong;

  std::string to_string() const;
  static ModelClass parse(std::string_view text);  // throws ParseError
  bool operator==(const ModelClass&) const = default;
};

// All 24 combinations, in a fixed order.
std::vector<ModelClass> all_model_classes();

std::string to_string(SelectionKind kind);
SelectionKind parse_selection_kind(std::string_view text);

// Node indices in increasing order.
using Selection = std::vector<NodeIndex>;

class PermittedSelections {
 public:
  PermittedSelections(SelectionKind kind, std::size_t node_count);
  bool contains(const Selection& s) const;
  // Exclusive and synchronous enumerate always; liberal up to max_nodes.
  std::vector<Selection> enumerate(std::size_t max_nodes = 20) const;

 private:
  SelectionKind kind_;
  std::size_t n_;
};

struct SchedulePolicy {
  enum class Kind { Synchronous, ExclusiveUniform, LiberalBernoulli, Explicit };
  Kind kind = Kind::Synchronous;
  double p = 0.5;
  std::vector<Selection> schedule;  // Explicit only
  bool repeat = false;              // Explicit: cycle through the schedule

  static SchedulePolicy synchronous() { return {}; }
  static SchedulePolicy exclusive_uniform() { return {Kind::ExclusiveUniform, 0.5, {}, false}; }
  static SchedulePolicy liberal_bernoulli(double p = 0.5) {
    return {Kind::LiberalBernoulli, p, {}, false};
  }
  static SchedulePolicy explicit_schedule(std::vector<Selection> s, bool repeat) {
    return {Kind::Explicit, 0.5, std::move(s), repeat};
  }
  // Matching random policy for a selection kind.
  static SchedulePolicy for_kind(SelectionKind kind);

  // "sync", "exclusive-uniform", "liberal-bernoulli:0.3". Files are loaded by callers.
  static SchedulePolicy parse(std::string_view text);
};

enum class StepStatus { Accepting, Rejecting, Neither };

struct TerminalNote {
  enum class Kind { BudgetExhausted, CycleDetected, Fixpoint, ScheduleExhausted };
  Kind kind = Kind::BudgetExhausted;
  std::size_t period = 0;      // CycleDetected
  std::size_t cycle_start = 0; // CycleDetected: index of the first repeated configuration
};

struct RunTrace {
  std::vector<Configuration> configurations;  // C_0 .. C_k
  std::vector<Selection> selections;          // S_1 .. S_k
  std::vector<StepStatus> status;             // per configuration
  TerminalNote terminal;
};

struct SimulateOptions {
  // Throw EvaluationError if a node ever leaves Y or N.
  bool assert_halting = false;
  // Keep every configuration; otherwise only the statuses and the last one.
  bool keep_configurations = true;
};

// Runs at most `budget` steps. Synchronous runs stop at the first repeated
// configuration. Random runs stop early at a global fixpoint. Runs are a
// function of (policy, seed).
RunTrace simulate(const Machine& m, const LabeledGraph& g, const SchedulePolicy& policy,
                  long long budget, std::uint64_t seed, const SimulateOptions& options = {});

StepStatus classify(const Configuration& c, const Machine& m);

// Empty means the machine satisfies the class's syntactic requirements.
std::vector<std::string> check_model_class(const Machine& m, const ModelClass& mc,
                                           std::size_t halting_cap = 1'000'000);

// For each node, steps since it was last selected at the end of the trace.
std::vector<std::size_t> weakly_fair_prefix_deficit(const RunTrace& trace,
                                                    const LabeledGraph& g);

std::string trace_to_json(const RunTrace& trace, const Machine& m, const LabeledGraph& g);

// Uniform helpers over std::mt19937_64 with a fixed mapping, so traces are
// identical across standard libraries.
double uniform01(std::mt19937_64& rng);
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

}  // namespace distaut
