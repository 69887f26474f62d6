#include <random>

#include <gtest/gtest.h>

#include "distaut/engine.hpp"
#include "distaut/errors.hpp"
#include "distaut/popproto.hpp"

using namespace distaut;

namespace {

std::size_t blacks(const LabeledGraph& g) {
  std::size_t n = 0;
  for (const auto& l : g.labels()) n += l == "black";
  return n;
}

LabeledGraph bw(LabeledGraph shape, std::vector<std::string> labels) {
  return relabel(shape, std::move(labels), {"black", "white"});
}

}  // namespace

TEST(PopulationProtocol, RejectsOverlappingVerdictSets) {
  EXPECT_THROW(PopulationProtocol("bad", {"a"}, {"x"}, {0}, {0}, {0}, {}), ValidationError);
}

TEST(PpStep, IdentityKeepsConfiguration) {
  const auto p = identity_protocol();
  const auto g = bw(generate_path(3), {"black", "white", "black"});
  const auto c = pp_initial_configuration(p, g);
  EXPECT_EQ(pp_step(c, {0, 1}, p, g), c);
}

TEST(PpStep, ParityMergesTwoTokens) {
  const auto p = parity_protocol();
  const auto g = bw(generate_path(2), {"black", "black"});
  const auto c = pp_step(pp_initial_configuration(p, g), {0, 1}, p, g);
  EXPECT_EQ(p.state_name(c[0]), "A0");
  EXPECT_EQ(p.state_name(c[1]), "P0");
}

TEST(PpStep, OrderMattersForAsymmetricRules) {
  const auto p = parity_protocol();
  const auto g = bw(generate_path(2), {"black", "black"});
  const auto c0 = pp_initial_configuration(p, g);
  const auto forward = pp_step(c0, {0, 1}, p, g);
  const auto backward = pp_step(c0, {1, 0}, p, g);
  EXPECT_NE(forward, backward);
}

TEST(PpStep, NonAdjacentPairIsRejected) {
  const auto p = parity_protocol();
  const auto g = bw(generate_path(3), {"black", "white", "white"});
  const auto c = pp_initial_configuration(p, g);
  EXPECT_THROW(pp_step(c, {0, 2}, p, g), DomainError);
  EXPECT_THROW(pp_step(c, {1, 1}, p, g), DomainError);
}

TEST(PpDecide, Examples) {
  const auto parity = parity_protocol();
  EXPECT_EQ(pp_decide(parity, bw(generate_complete(3), {"black", "black", "white"})).outcome, Outcome::Accept);
  EXPECT_EQ(pp_decide(parity, bw(generate_path(3), {"white", "black", "white"})).outcome, Outcome::Reject);
  EXPECT_EQ(pp_decide(parity, bw(generate_path(2), {"black", "black"})).outcome, Outcome::Accept);
  EXPECT_EQ(pp_decide(threshold_protocol(1), bw(generate_path(2), {"white", "white"})).outcome, Outcome::Reject);
  EXPECT_EQ(pp_decide(threshold_protocol(2), bw(generate_star(2), {"white", "black", "white"})).outcome,
            Outcome::Reject);
}

TEST(PpDecide, CompleteGraphsFollowTheCountingPredicate) {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (const auto& g : all_labelings(generate_complete(n), {"black", "white"})) {
      const auto k = blacks(g);
      EXPECT_EQ(pp_decide(parity_protocol(), g).outcome, k % 2 == 0 ? Outcome::Accept : Outcome::Reject);
      for (int c = 1; c <= 4; ++c) {
        EXPECT_EQ(pp_decide(threshold_protocol(c), g).outcome,
                  k >= static_cast<std::size_t>(c) ? Outcome::Accept : Outcome::Reject)
            << "c=" << c << " k=" << k;
      }
    }
  }
}

TEST(PpDecide, ThresholdOneIsBlackDetection) {
  for (const auto& shape : enumerate_connected_graphs(4)) {
    for (const auto& g : all_labelings(shape, {"black", "white"})) {
      EXPECT_EQ(pp_decide(threshold_protocol(1), g).outcome, blacks(g) > 0 ? Outcome::Accept : Outcome::Reject);
    }
  }
}

TEST(PpStep, ParityConservesTokenValueSum) {
  // the xor of active token values stays the parity of black nodes
  const auto p = parity_protocol();
  const auto g = bw(generate_cycle(4), {"black", "black", "black", "white"});
  auto c = pp_initial_configuration(p, g);
  std::mt19937_64 rng(4);
  for (int step = 0; step < 200; ++step) {
    const auto& e = g.edges()[uniform_below(rng, g.edge_count())];
    const bool flip = uniform_below(rng, 2) == 1;
    c = pp_step(c, {flip ? e.second : e.first, flip ? e.first : e.second}, p, g);
    int x = 0, tokens = 0;
    for (auto q : c.states()) {
      if (p.state_name(q) == "A1") x ^= 1;
      if (p.state_name(q)[0] == 'A') ++tokens;
    }
    EXPECT_EQ(x, 1);
    EXPECT_GE(tokens, 1);
  }
}

TEST(Threshold, OutOfRange) {
  EXPECT_THROW(threshold_protocol(0), DomainError);
  EXPECT_THROW(threshold_protocol(5), DomainError);
}
