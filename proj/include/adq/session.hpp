#pragma once

// The debugging loop: select a question, ask the oracle, shrink the tree,
// repeat until no Undefined node is left.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "adq/met.hpp"
#include "adq/strategies.hpp"

namespace adq {

/// Answers as if `buggy` were the faulty node: a question is Wrong exactly
/// when the asked node is an ancestor of, or is, the buggy node.
struct SimulatedOracle {
  std::optional<NodeId> buggy;  // nullopt: the program has no bug

  Answer ask(const Met& met, NodeId n) const {
    return buggy && met.is_ancestor_or_self(n, *buggy) ? Answer::Wrong : Answer::Correct;
  }
};

struct ScriptedOracle {
  std::vector<Answer> answers;
  std::size_t next = 0;

  Answer ask(const Met& met, NodeId n) {
    if (next >= answers.size()) {
      throw session_error("answer script exhausted at question " + std::to_string(next + 1) + " (" +
                          met.node(n).label + ")");
    }
    return answers[next++];
  }
};

struct InteractiveOracle {
  std::function<Answer(const Met&, NodeId)> callback;

  Answer ask(const Met& met, NodeId n) const { return callback(met, n); }
};

using Oracle = std::variant<SimulatedOracle, ScriptedOracle, InteractiveOracle>;

inline Answer ask(Oracle& oracle, const Met& met, NodeId n) {
  return std::visit([&](auto& o) { return o.ask(met, n); }, oracle);
}

struct QuestionRecord {
  NodeId node;
  std::string label;
  Answer answer;

  bool operator==(const QuestionRecord&) const = default;
};

struct SessionReport {
  std::optional<NodeId> buggy;
  std::string buggy_label;
  std::size_t questions = 0;
  std::vector<QuestionRecord> transcript;
};

/// Incremental session. `pending` is the node awaiting an answer; once it is
/// empty the session is finished and `report()` is final.
class SessionState {
 public:
  const Met& met() const { return met_; }
  StrategyId strategy() const { return strategy_; }
  const std::optional<NodeId>& pending() const { return pending_; }
  bool finished() const { return !pending_.has_value(); }
  const std::vector<QuestionRecord>& transcript() const { return transcript_; }

  SessionReport report() const {
    SessionReport r;
    r.questions = transcript_.size();
    r.transcript = transcript_;
    if (last_wrong_) {
      r.buggy = last_wrong_->node;
      r.buggy_label = last_wrong_->label;
    } else if (prewrong_root_) {
      r.buggy = prewrong_root_->first;
      r.buggy_label = prewrong_root_->second;
    }
    return r;
  }

  friend SessionState start_session(Met met, StrategyId strategy, std::optional<NodeId> forced_first);
  friend SessionState step_session(SessionState state, Answer a);

 private:
  void select_next() {
    if (sea_empty(met_)) {
      pending_.reset();
      return;
    }
    pending_ = select(met_, strategy_).chosen;
  }

  Met met_;
  StrategyId strategy_ = StrategyId::DQO_GENERAL;
  std::optional<NodeId> pending_;
  std::vector<QuestionRecord> transcript_;
  std::optional<QuestionRecord> last_wrong_;
  std::optional<std::pair<NodeId, std::string>> prewrong_root_;
};

/// `forced_first` overrides the strategy for the first question only; later
/// questions come from `strategy`.
inline SessionState start_session(Met met, StrategyId strategy, std::optional<NodeId> forced_first = std::nullopt) {
  if (sea_empty(met)) throw precondition_error("session needs at least one Undefined node");
  check_applicable(met, strategy);
  SessionState s;
  if (met.root_wrong()) s.prewrong_root_.emplace(met.root(), met.node(met.root()).label);
  s.met_ = std::move(met);
  s.strategy_ = strategy;
  if (forced_first) {
    require_in_sea(s.met_, *forced_first);
    s.pending_ = *forced_first;
  } else {
    s.select_next();
  }
  return s;
}

inline SessionState step_session(SessionState state, Answer a) {
  if (state.finished()) throw session_error("session already finished");
  const NodeId n = *state.pending_;
  QuestionRecord rec{n, state.met_.node(n).label, a};
  state.transcript_.push_back(rec);
  if (a == Answer::Wrong) state.last_wrong_ = rec;
  state.met_ = apply_answer(state.met_, n, a);
  state.select_next();
  return state;
}

inline SessionReport run_session(const Met& met, StrategyId strategy, Oracle& oracle,
                                 std::optional<NodeId> forced_first = std::nullopt) {
  SessionState s = start_session(met, strategy, forced_first);
  while (!s.finished()) {
    const Answer a = ask(oracle, s.met(), *s.pending());
    s = step_session(std::move(s), a);
  }
  return s.report();
}

inline SessionReport run_session(const Met& met, StrategyId strategy, Oracle&& oracle,
                                 std::optional<NodeId> forced_first = std::nullopt) {
  return run_session(met, strategy, oracle, forced_first);
}

}  // namespace adq
