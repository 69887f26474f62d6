#include <gtest/gtest.h>

#include "distaut/errors.hpp"
#include "distaut/graph.hpp"
#include "distaut/machine.hpp"
#include "distaut/rule_table.hpp"
#include "distaut/zoo.hpp"

using namespace distaut;

namespace {

MachineHeader two_state_header(int beta) {
  MachineHeader h;
  h.name = "two";
  h.states = {"a", "b"};
  h.alphabet = {"x", "y"};
  h.beta = beta;
  h.init = {{"x", "a"}, {"y", "b"}};
  h.accepting = {"a"};
  h.rejecting = {"b"};
  return h;
}

}  // namespace

TEST(BoundedMultiset, CountsAreCappedAtBeta) {
  BoundedMultiset p(2);
  p.add(3);
  p.add(3);
  p.add(3);
  p.add(1);
  EXPECT_EQ(p.count(3), 2);
  EXPECT_EQ(p.count(1), 1);
  EXPECT_EQ(p.count(0), 0);
  EXPECT_EQ(p.total(), 3);
  ASSERT_EQ(p.entries().size(), 2u);
  EXPECT_EQ(p.entries()[0].state, 1);  // sorted by state
}

TEST(BoundedMultiset, SetDetectionSeesPresenceOnly) {
  const auto g = generate_star(3);
  Configuration c({0, 1, 1, 1});
  const auto p = bounded_multiset(c, 0, g, 1);
  EXPECT_EQ(p.count(1), 1);
  EXPECT_EQ(p.total(), 1);
}

TEST(RuleTable, FirstMatchingRuleWins) {
  RuleTable rt;
  rt.rules.push_back({"b", {{"a", Comparator::Ge, 2}}, "a"});
  rt.rules.push_back({"b", {{"a", Comparator::Eq, 1}}, "b"});
  const auto m = compile_rule_table(rt, two_state_header(2));
  BoundedMultiset one(2), two(2);
  one.add(0);
  two.add(0, 2);
  EXPECT_EQ(m.next(1, one), 1);
  EXPECT_EQ(m.next(1, two), 0);
  EXPECT_EQ(m.next(0, two), 0);  // no rule: keep the state
}

TEST(RuleTable, ValidationListsEveryProblem) {
  RuleTable rt;
  rt.rules.push_back({"c", {{"a", Comparator::Ge, 3}}, "a"});
  auto h = two_state_header(1);
  h.init.erase("y");
  try {
    compile_rule_table(rt, h);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_GE(e.violations().size(), 3u);
  }
}

TEST(Machine, AcceptingAndRejectingMustBeDisjoint) {
  auto h = two_state_header(1);
  h.rejecting = {"a"};
  EXPECT_THROW(compile_rule_table({}, h), ValidationError);
}

TEST(Machine, SuccessorUsesTheOldConfiguration) {
  const auto m = black_detector().machine;
  const auto g = make_graph({"black", "white", "white"}, {{0, 1}, {1, 2}}, {"black", "white"});
  auto c = initial_configuration(m, g);
  const Selection all{0, 1, 2};
  c = successor(c, all, m, g);
  EXPECT_EQ(m.state_name(c[1]), "black");
  EXPECT_EQ(m.state_name(c[2]), "white");  // its neighbor was still white
  c = successor(c, all, m, g);
  EXPECT_EQ(m.state_name(c[2]), "black");
}

TEST(Machine, HaltingCheck) {
  EXPECT_TRUE(is_halting(star_recognizer_halting().machine));
  EXPECT_TRUE(is_halting(oscillator_halt().machine));
  const auto report = check_halting(black_detector().machine);
  EXPECT_EQ(report.status, HaltingStatus::NotHalting);
  EXPECT_NE(report.detail.find("white"), std::string::npos);
}

TEST(ExplicitTable, CoversEveryBoundedNeighborhood) {
  const auto m = compile_rule_table({}, two_state_header(2));
  // |Q| * (beta+1)^|Q| = 2 * 9
  EXPECT_EQ(export_table(m).entries.size(), 18u);
  EXPECT_TRUE(table_enumerable(m));
  EXPECT_FALSE(table_enumerable(c3_recognizer().machine));
  EXPECT_THROW(export_table(c3_recognizer().machine), TooLarge);
}

TEST(ExplicitTable, ToRuleTableReproducesTheMachine) {
  const auto src = star_recognizer_halting().machine;
  const auto table = export_table(src);
  const auto rebuilt = compile_rule_table(to_rule_table(src, table), header_of(src));
  for (const auto& e : table.entries) {
    BoundedMultiset p(src.beta());
    for (std::size_t q = 0; q < e.counts.size(); ++q) p.add(static_cast<StateId>(q), e.counts[q]);
    EXPECT_EQ(rebuilt.next(e.from, p), e.to);
  }
}
