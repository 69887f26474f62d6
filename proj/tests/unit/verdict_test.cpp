#include <set>

#include <gtest/gtest.h>

#include "brute.hpp"
#include "distaut/errors.hpp"
#include "distaut/verdict.hpp"
#include "distaut/zoo.hpp"

using namespace distaut;

namespace {

std::set<std::vector<std::string>> vertex_names(const ConfigGraph& cg, const Machine& m) {
  std::set<std::vector<std::string>> out;
  for (const auto& c : cg.vertices) {
    std::vector<std::string> names;
    for (auto q : c.states()) names.push_back(m.state_name(q));
    out.insert(names);
  }
  return out;
}

// Small labeled corpus: every a/b labeling of the connected graphs with 2..4 nodes.
std::vector<LabeledGraph> small_corpus(std::size_t max_nodes) {
  std::vector<LabeledGraph> out;
  for (const auto& g : enumerate_connected_graphs(max_nodes, 2)) {
    for (auto& h : all_labelings(g, {"a", "b"})) out.push_back(std::move(h));
  }
  return out;
}

Machine random_ab(std::uint64_t seed, std::size_t states, int beta) {
  RandomMachineSpec spec;
  spec.states = states;
  spec.beta = beta;
  spec.alphabet = {"a", "b"};
  return random_machine(seed, spec);
}

}  // namespace

TEST(ConfigGraph, BlackDetectorOnEdge) {
  const auto m = black_detector().machine;
  const auto cg = build_config_graph(m, generate_path({"black", "white"}), SelectionKind::Liberal);
  const std::set<std::vector<std::string>> expected{{"black", "white"}, {"black", "black"}};
  EXPECT_EQ(vertex_names(cg, m), expected);
}

TEST(ConfigGraph, OscillatorSynchronousOnEdge) {
  const auto m = oscillator_halt().machine;
  const auto cg = build_config_graph(m, generate_path(2), SelectionKind::Synchronous);
  const std::set<std::vector<std::string>> expected{{"p", "p"}, {"q", "q"}};
  EXPECT_EQ(vertex_names(cg, m), expected);
}

TEST(ConfigGraph, CapIsEnforced) {
  const auto m = star_recognizer_stabilizing().machine;
  EXPECT_THROW(build_config_graph(m, generate_star(4), SelectionKind::Liberal, 10), TooLarge);
  DecideOptions small;
  small.max_configs = 10;
  EXPECT_EQ(decide_strong(m, generate_star(4), SelectionKind::Liberal, small).outcome, Outcome::TooLarge);
}

TEST(DecideStrong, Examples) {
  const auto b = black_detector().machine;
  const auto s = star_recognizer_stabilizing().machine;
  EXPECT_EQ(decide_strong(b, generate_star(3, "white"), SelectionKind::Exclusive).outcome, Outcome::Reject);
  EXPECT_EQ(decide_strong(b, generate_path({"white", "black", "white"}), SelectionKind::Exclusive).outcome,
            Outcome::Accept);
  EXPECT_EQ(decide_strong(s, generate_cycle(3), SelectionKind::Liberal).outcome, Outcome::Reject);
  EXPECT_EQ(decide_strong(s, generate_star(2), SelectionKind::Liberal).outcome, Outcome::Accept);
}

TEST(DecideWeak, Examples) {
  const auto c4 = relabel(generate_cycle(4), {"white", "white", "white", "white"}, {"black", "white"});
  EXPECT_EQ(decide_weak(black_detector().machine, c4, SelectionKind::Liberal).outcome, Outcome::Reject);
  EXPECT_EQ(decide_weak(oscillator_halt().machine, generate_path(2), SelectionKind::Liberal).outcome,
            Outcome::Inconsistent);
  EXPECT_EQ(decide_weak(star_recognizer_halting().machine, generate_star(3), SelectionKind::Liberal).outcome,
            Outcome::Accept);
}

TEST(Decide, Examples) {
  const auto star_black = make_graph({"black", "white", "white"}, {{0, 1}, {0, 2}}, {"black", "white"});
  EXPECT_EQ(decide(black_detector().machine, star_black, ModelClass::parse("set.stabilizing.liberal.weak")).outcome,
            Outcome::Accept);
  EXPECT_EQ(
      decide(oscillator_halt().machine, generate_path(2), ModelClass::parse("set.halting.synchronous.weak")).outcome,
      Outcome::Inconsistent);
  const auto ta = trivial_accept().machine;
  for (const auto& g : enumerate_connected_graphs(4)) {
    for (const auto& mc : all_model_classes()) EXPECT_EQ(decide(ta, g, mc).outcome, Outcome::Accept);
  }
}

TEST(Decide, ClassMismatchThrowsValidationError) {
  EXPECT_THROW(decide(star_recognizer_halting().machine, generate_star(3),
                      ModelClass::parse("set.halting.liberal.weak")),
               ValidationError);
}

TEST(Decide, InvalidGraphThrows) {
  LabeledGraph split({std::string(kUnlabeled)}, {"x", "y"}, {std::string(kUnlabeled), std::string(kUnlabeled)}, {});
  EXPECT_THROW(decide(trivial_accept().machine, split, ModelClass::parse("set.halting.liberal.weak")),
               ValidationError);
}

TEST(ConsistencyReport, Examples) {
  std::vector<LabeledGraph> edges = all_labelings(generate_path(2), {"black", "white"});
  const auto rows = consistency_report(black_detector().machine, black_detector().model_class, edges);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.verdict.outcome, has_black_node(r.graph) ? Outcome::Accept : Outcome::Reject);
  }
  const auto corpus = enumerate_connected_graphs(4);
  for (const auto& r : consistency_report(oscillator_halt().machine, ModelClass::parse("set.halting.liberal.weak"), corpus)) {
    EXPECT_EQ(r.verdict.outcome, Outcome::Inconsistent);
  }
  for (const auto& r : consistency_report(trivial_reject().machine, trivial_reject().model_class, corpus)) {
    EXPECT_EQ(r.verdict.outcome, Outcome::Reject);
  }
}

// Engine against the reference procedures, random machines on every
// labeled graph with up to four nodes.
class AgainstBruteForce : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(AgainstBruteForce, AllSelectionsAndFairness) {
  const auto seed = GetParam();
  const auto m = random_ab(seed, 2 + seed % 2, 1 + static_cast<int>(seed % 3 == 0));
  for (const auto& g : small_corpus(seed % 2 ? 4 : 3)) {
    for (auto kind : {SelectionKind::Liberal, SelectionKind::Exclusive}) {
      EXPECT_EQ(decide_strong(m, g, kind).outcome, brute::decide_strong(m, g, kind));
      const auto weak = brute::decide_weak(m, g, kind);
      EXPECT_EQ(decide_weak(m, g, kind).outcome, weak);
      EXPECT_EQ(decide_weak_product(m, g, kind).outcome, weak);
    }
    EXPECT_EQ(decide_synchronous(m, g).outcome, brute::decide_synchronous(m, g));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, AgainstBruteForce, ::testing::Range<std::uint64_t>(1, 13));

TEST(DecideProperties, SynchronousIsStronglyFair) {
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const auto m = random_ab(seed, 3, 1);
    for (const auto& g : small_corpus(4)) {
      const auto sync = decide_synchronous(m, g).outcome;
      EXPECT_EQ(decide_strong(m, g, SelectionKind::Synchronous).outcome, sync);
      EXPECT_EQ(decide_weak(m, g, SelectionKind::Synchronous).outcome, sync);
    }
  }
}

TEST(DecideProperties, LiberalWeakVerdictsCarryOver) {
  for (std::uint64_t seed = 40; seed < 60; ++seed) {
    const auto m = random_ab(seed, 3, 1);
    for (const auto& g : small_corpus(4)) {
      const auto base = decide_weak(m, g, SelectionKind::Liberal).outcome;
      if (base != Outcome::Accept && base != Outcome::Reject) continue;
      EXPECT_EQ(decide_weak(m, g, SelectionKind::Exclusive).outcome, base);
      EXPECT_EQ(decide_synchronous(m, g).outcome, base);
      EXPECT_EQ(decide_strong(m, g, SelectionKind::Liberal).outcome, base);
    }
  }
}

TEST(Witness, InconsistentLassosReplay) {
  DecideOptions opts;
  opts.witness = true;
  std::size_t checked = 0;
  for (std::uint64_t seed = 60; seed < 80; ++seed) {
    const auto m = random_ab(seed, 3, 1);
    for (const auto& g : small_corpus(3)) {
      for (auto kind : {SelectionKind::Liberal, SelectionKind::Exclusive, SelectionKind::Synchronous}) {
        for (const auto& v : {decide_strong(m, g, kind, opts), decide_weak(m, g, kind, opts)}) {
          for (const auto& w : v.witnesses) {
            EXPECT_TRUE(replay_lasso(m, g, kind, w));
            ++checked;
          }
          if (v.outcome == Outcome::Inconsistent) {
            EXPECT_FALSE(v.witnesses.empty());
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 0u);
}

TEST(Witness, WeakLassoLoopSelectsEveryNode) {
  DecideOptions opts;
  opts.witness = true;
  const auto m = oscillator_halt().machine;
  const auto g = generate_cycle(3);
  const auto v = decide_weak(m, g, SelectionKind::Liberal, opts);
  ASSERT_EQ(v.outcome, Outcome::Inconsistent);
  for (const auto& w : v.witnesses) {
    std::set<NodeIndex> seen;
    for (const auto& s : w.loop) seen.insert(s.begin(), s.end());
    EXPECT_EQ(seen.size(), g.node_count());
  }
}

TEST(VerdictJson, HasOutcome) {
  const auto m = black_detector().machine;
  const auto g = generate_path({"black", "white"});
  const auto text = verdict_to_json(decide_strong(m, g, SelectionKind::Liberal), m, g);
  EXPECT_NE(text.find("\"Accept\""), std::string::npos);
}
