#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "distaut/engine.hpp"
#include "distaut/graph.hpp"
#include "distaut/machine.hpp"

namespace distaut {

// Membership test written directly against the graph, never via a machine.
using GraphOracle = std::function<bool(const LabeledGraph&)>;

struct ZooEntry {
  std::string name;
  Machine machine;
  ModelClass model_class;
  GraphOracle oracle;
  std::string summary;
};

// Language oracles.
bool has_black_node(const LabeledGraph& g);
bool is_star(const LabeledGraph& g);
bool is_even_star(const LabeledGraph& g);
bool is_labeled_triangle(const LabeledGraph& g);  // C3 labeled 0,1,2

// White nodes with a black neighbor turn black. Y={black}, N={white}.
ZooEntry black_detector();

// States (estimate, color); the color flips on every move, so a node with
// two differently colored neighbors eventually notices it.
ZooEntry star_recognizer_stabilizing();

// beta=2; {init, leaf, non-leaf, accept, reject}.
ZooEntry star_recognizer_halting();

// The halting star recognizer followed by a leaf-counting phase. Needs
// exclusive selection; 27 states.
ZooEntry even_star_counter();
// even_star_counter lifted to liberal selection.
ZooEntry even_star_counter_liberal();

// Label/degree checks plus a wave protocol driven by 2-labeled nodes.
ZooEntry c3_recognizer();

// {p, q, h}: alternates p/q synchronously, halts in h otherwise.
ZooEntry oscillator_halt();

ZooEntry trivial_accept(std::vector<std::string> alphabet = {std::string(kUnlabeled)});
ZooEntry trivial_reject(std::vector<std::string> alphabet = {std::string(kUnlabeled)});

struct RandomMachineSpec {
  std::size_t states = 3;
  int beta = 1;
  std::vector<std::string> alphabet = {std::string(kUnlabeled)};
  // Each state goes to Y, N or neither with equal probability.
  bool verdict_sets = true;
};

// Uniform total table; a function of (seed, spec).
Machine random_machine(std::uint64_t seed, const RandomMachineSpec& spec);

// Random machines until one is consistent (Accept or Reject) on every graph
// given, under the class. Returns the machine and the seed used.
std::pair<Machine, std::uint64_t> random_consistent_machine(
    std::uint64_t seed, const RandomMachineSpec& spec, const ModelClass& mc,
    const std::vector<LabeledGraph>& graphs, int max_tries = 10'000);

std::vector<std::string> zoo_names();
// Throws DomainError for an unknown name.
ZooEntry zoo_entry(const std::string& name);

// Builtin machines by name, as referenced from machine JSON. `alphabet` is
// used by the trivial and random machines only.
Machine builtin_machine(const std::string& name, const std::map<std::string, std::int64_t>& params,
                        const std::vector<std::string>& alphabet = {});

}  // namespace distaut
