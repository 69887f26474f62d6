#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "distaut/engine.hpp"
#include "distaut/exploration.hpp"
#include "distaut/graph.hpp"
#include "distaut/machine.hpp"

namespace distaut {

enum class Outcome { Accept, Reject, Inconsistent, TooLarge };

std::string to_string(Outcome o);

// A run given as C_0 -stem-> C_k -loop-> C_k, repeated forever.
struct Lasso {
  std::vector<Selection> stem;
  std::vector<Selection> loop;
  Configuration start;       // C_0
  Configuration loop_entry;  // C_k
  std::string outcome;       // what the run does: "accepting", "rejecting", "neither"
};

struct Verdict {
  Outcome outcome = Outcome::TooLarge;
  std::vector<Lasso> witnesses;
  std::size_t configurations = 0;  // explored vertices
  std::string note;
};

struct DecideOptions {
  std::size_t max_configs = 2'000'000;
  std::size_t max_product = 1'000'000;
  bool witness = false;
};

// Materialized configuration graph, for inspection and DOT export.
struct ConfigGraph {
  std::vector<Configuration> vertices;
  struct Arc {
    VertexId from;
    VertexId to;
    NodeMask selections;  // union of selections realizing the arc
  };
  std::vector<Arc> arcs;
  std::vector<bool> accepting;
  std::vector<bool> rejecting;
};

ConfigGraph build_config_graph(const Machine& m, const LabeledGraph& g, SelectionKind kind,
                               std::size_t max_configs = 2'000'000);
std::string config_graph_to_dot(const ConfigGraph& cg, const Machine& m, const LabeledGraph& g);

// Strong fairness: every reachable bottom component decides the run set.
Verdict decide_strong(const Machine& m, const LabeledGraph& g, SelectionKind kind,
                      const DecideOptions& options = {});

// Weak fairness: a component hosts a weakly fair run forever iff the
// selections on its internal edges cover every node. Accept iff no such
// component contains a non-accepting configuration; Reject symmetrically.
Verdict decide_weak(const Machine& m, const LabeledGraph& g, SelectionKind kind,
                    const DecideOptions& options = {});

// Same question through the product with the set of nodes not yet selected
// since the last reset, enumerating selections one by one. Slower; kept as
// an independent cross-check of decide_weak.
Verdict decide_weak_product(const Machine& m, const LabeledGraph& g, SelectionKind kind,
                            const DecideOptions& options = {});

// Follows the unique synchronous run until a configuration repeats.
Verdict decide_synchronous(const Machine& m, const LabeledGraph& g,
                           const DecideOptions& options = {});

// Checks the class (throws ValidationError with the violations), validates
// the graph, then dispatches. TooLarge is reported as an outcome.
Verdict decide(const Machine& m, const LabeledGraph& g, const ModelClass& mc,
               const DecideOptions& options = {});

// Replays a lasso through successor(): true iff every step is permitted for
// `kind` and the loop returns to its entry configuration.
bool replay_lasso(const Machine& m, const LabeledGraph& g, SelectionKind kind, const Lasso& lasso);

std::string verdict_to_json(const Verdict& v, const Machine& m, const LabeledGraph& g);

struct ConsistencyRow {
  LabeledGraph graph;
  Verdict verdict;
};

std::vector<ConsistencyRow> consistency_report(const Machine& m, const ModelClass& mc,
                                               const std::vector<LabeledGraph>& corpus,
                                               const DecideOptions& options = {});

}  // namespace distaut
