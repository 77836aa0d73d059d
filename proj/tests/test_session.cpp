#include <set>

#include <gtest/gtest.h>

#include "adq/session.hpp"
#include "fixtures.hpp"

using namespace adq;
using testing_support::chain;
using testing_support::fixture;
using testing_support::node;

namespace {

std::vector<NodeId> asked(const SessionReport& r) {
  std::vector<NodeId> out;
  for (const auto& q : r.transcript) out.push_back(q.node);
  return out;
}

}  // namespace

TEST(RunSession, ChainMiddleBug) {
  const SessionReport r = run_session(chain(3), StrategyId::DQO, SimulatedOracle{NodeId{2}});
  ASSERT_TRUE(r.buggy);
  EXPECT_EQ(*r.buggy, NodeId{2});
  EXPECT_EQ(r.questions, 2u);
}

TEST(RunSession, ChainNoBug) {
  const SessionReport r = run_session(chain(3), StrategyId::DQO, SimulatedOracle{std::nullopt});
  EXPECT_FALSE(r.buggy);
  EXPECT_EQ(r.questions, 2u);
  for (const auto& q : r.transcript) EXPECT_EQ(q.answer, Answer::Correct);
}

TEST(RunSession, InsortTopDownTranscript) {
  const Met m = fixture("insort.json");
  const SessionReport r = run_session(m, StrategyId::TOP_DOWN, SimulatedOracle{NodeId{6}});
  ASSERT_TRUE(r.buggy);
  EXPECT_EQ(r.buggy_label, "insert 1 [3] = [3,1]");
  ASSERT_EQ(r.transcript.size(), 4u);
  const std::vector<QuestionRecord> expected{
      {NodeId{2}, "insort [1,3] = [3,1]", Answer::Wrong},
      {NodeId{3}, "insort [3] = [3]", Answer::Correct},
      {NodeId{6}, "insert 1 [3] = [3,1]", Answer::Wrong},
      {NodeId{7}, "insert 1 [] = [1]", Answer::Correct},
  };
  EXPECT_EQ(r.transcript, expected);
}

TEST(RunSession, ScriptedMatchesSimulated) {
  const Met m = fixture("insort.json");
  const SessionReport r = run_session(
      m, StrategyId::TOP_DOWN, ScriptedOracle{{Answer::Wrong, Answer::Correct, Answer::Wrong, Answer::Correct}});
  ASSERT_TRUE(r.buggy);
  EXPECT_EQ(*r.buggy, NodeId{6});
}

TEST(RunSession, ScriptExhaustedIsSessionError) {
  EXPECT_THROW(run_session(chain(3), StrategyId::DQO, ScriptedOracle{{Answer::Wrong}}), session_error);
}

TEST(RunSession, InteractiveCallbackSeesPendingNode) {
  std::vector<NodeId> seen;
  InteractiveOracle oracle{[&](const Met& m, NodeId n) {
    EXPECT_TRUE(m.is_undefined(n));
    seen.push_back(n);
    return Answer::Correct;
  }};
  const SessionReport r = run_session(fixture("figure4.json"), StrategyId::DQO, oracle);
  EXPECT_EQ(asked(r), seen);
}

TEST(RunSession, WrongRootAllCorrectReportsRoot) {
  const SessionReport r = run_session(chain(3, true), StrategyId::DQO, SimulatedOracle{std::nullopt});
  ASSERT_TRUE(r.buggy);
  EXPECT_EQ(*r.buggy, NodeId{1});
}

TEST(RunSession, EmptySearchAreaRejected) {
  EXPECT_THROW(start_session(Met({node(1)}, NodeId{1}, true), StrategyId::DQO), precondition_error);
  EXPECT_THROW(start_session(Met{}, StrategyId::DQO), precondition_error);
}

TEST(RunSession, InapplicableStrategyRejected) {
  const Met m({node(1, {2}, 1.0), node(2, {}, 3.0)}, NodeId{1});
  EXPECT_THROW(start_session(m, StrategyId::DQO), precondition_error);
}

TEST(RunSession, ForcedFirstQuestion) {
  const SessionReport r = run_session(chain(3), StrategyId::DQO, SimulatedOracle{std::nullopt}, NodeId{3});
  ASSERT_FALSE(r.transcript.empty());
  EXPECT_EQ(r.transcript.front().node, NodeId{3});
  EXPECT_THROW(start_session(chain(3, true), StrategyId::DQO, NodeId{1}), domain_error);
}

TEST(StepSession, WrongRestrictsToSubtree) {
  const Met f7 = fixture("figure7.json");
  SessionState s = start_session(f7, StrategyId::HEAVIEST_FIRST);
  ASSERT_EQ(s.pending(), NodeId{2});
  s = step_session(std::move(s), Answer::Wrong);
  ASSERT_TRUE(s.pending());
  EXPECT_TRUE(f7.is_ancestor_or_self(NodeId{2}, *s.pending()));
  EXPECT_NE(*s.pending(), NodeId{2});
}

TEST(StepSession, CorrectOnLastNodeFinishes) {
  SessionState s = start_session(Met({node(1)}, NodeId{1}), StrategyId::DQO);
  s = step_session(std::move(s), Answer::Correct);
  EXPECT_TRUE(s.finished());
  EXPECT_FALSE(s.report().buggy);
  EXPECT_EQ(s.report().questions, 1u);
  EXPECT_THROW(step_session(s, Answer::Correct), session_error);
}

TEST(StepSession, Figure4DqoAsksWeightFourFirst) {
  EXPECT_EQ(start_session(fixture("figure4.json"), StrategyId::DQO).pending(), NodeId{2});
}

// Every planted bug is found by every strategy that accepts the tree, within
// |Sea| questions, never asking a node twice.
TEST(Properties, CompletenessAndQuestionBound) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Met m = seed % 3 ? testing_support::random_uniform(seed, 30, seed % 2 == 0)
                           : testing_support::random_variable(seed, 30, 0.0);
    if (sea_empty(m)) continue;
    const std::size_t area = sea(m).size();
    for (StrategyId s : all_strategies) {
      if (!is_applicable(m, s)) continue;
      for (NodeId b : sea(m)) {
        const SessionReport r = run_session(m, s, SimulatedOracle{b});
        ASSERT_TRUE(r.buggy) << to_string(s) << " seed " << seed;
        EXPECT_EQ(*r.buggy, b) << to_string(s) << " seed " << seed;
        EXPECT_LE(r.questions, area);
        const auto q = asked(r);
        EXPECT_EQ(std::set<NodeId>(q.begin(), q.end()).size(), q.size());
        for (NodeId n : q) EXPECT_FALSE(m.root_wrong() && n == m.root());
      }
    }
  }
}
