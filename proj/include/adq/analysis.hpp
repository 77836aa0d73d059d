#pragma once

// Brute-force references for the strategies: exhaustive optimal-node sets,
// exact expected question counts over every buggy-node scenario, and the
// node-ordering theorems evaluated pairwise over a whole tree.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "adq/met.hpp"
#include "adq/session.hpp"
#include "adq/strategies.hpp"

namespace adq {

using Rational = boost::multiprecision::cpp_rational;

struct Scenario {
  std::optional<NodeId> buggy;  // nullopt: no bug
};

/// One scenario per search-area node, plus the no-bug scenario when requested.
inline std::vector<Scenario> scenarios(const Met& met, bool include_nobug = true) {
  std::vector<Scenario> out;
  for (NodeId id : sea(met)) out.push_back({id});
  if (include_nobug) out.push_back({std::nullopt});
  return out;
}

struct ExpectedCost {
  std::int64_t total = 0;      // questions summed over scenarios
  std::int64_t scenarios = 0;

  Rational value() const { return Rational(total, scenarios); }
};

/// Up/Down for every search-area node by direct enumeration of each node's
/// descendant set. Quadratic; used as the reference for the one-pass metrics.
struct BruteForceSplit {
  double up = 0.0;
  double down = 0.0;
};

inline std::unordered_map<NodeId, BruteForceSplit> brute_force_splits(const Met& met) {
  std::unordered_map<NodeId, BruteForceSplit> out;
  const auto area = sea(met);
  for (NodeId n : area) {
    std::unordered_set<NodeId> below;
    for (NodeId d : met.subtree(n)) {
      if (d != n) below.insert(d);
    }
    BruteForceSplit s;
    for (NodeId other : area) {
      if (other == n) continue;
      (below.contains(other) ? s.down : s.up) += met.node(other).wi;
    }
    out.emplace(n, s);
  }
  return out;
}

/// Nodes minimizing |Down - Up| over the search area, in id order.
inline std::vector<NodeId> optimal_set(const Met& met) {
  if (sea_empty(met)) throw precondition_error("search area is empty");
  const auto splits = brute_force_splits(met);
  double best = 0.0;
  bool first = true;
  for (const auto& [id, s] : splits) {
    const double v = std::fabs(s.down - s.up);
    if (first || v < best) best = v;
    first = false;
  }
  std::vector<NodeId> out;
  for (const auto& [id, s] : splits) {
    if (approx_equal(std::fabs(s.down - s.up), best)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Mean question count of the debugging loop over all scenarios.
inline ExpectedCost expected_questions(const Met& met, StrategyId strategy,
                                       std::optional<NodeId> forced_first = std::nullopt,
                                       bool include_nobug = true) {
  check_applicable(met, strategy);
  ExpectedCost cost;
  for (const Scenario& sc : scenarios(met, include_nobug)) {
    const SessionReport r = run_session(met, strategy, SimulatedOracle{sc.buggy}, forced_first);
    cost.total += static_cast<std::int64_t>(r.questions);
    ++cost.scenarios;
  }
  return cost;
}

// ---------------------------------------------------------------------------
// Theorem checking

struct Violation {
  std::string predicate;
  std::vector<NodeId> nodes;
  std::string detail;
};

struct TheoremReport {
  std::vector<Violation> violations;
  std::size_t checks = 0;  // predicate instances evaluated
  std::vector<std::string> skipped;  // predicates not applicable to this tree

  bool ok() const { return violations.empty(); }
};

/// Uniform trees: n1 divides better than a lighter n2 iff w_root > w1 + w2 - wi.
inline bool heavier_divides_better_condition(const Met& met, NodeId n1, NodeId n2) {
  const MetMetrics m(met);
  return definitely_greater(m.total(), m.w(n1) + m.w(n2) - met.node(met.root()).wi);
}

/// Loop guard of the general algorithm: w - wi/2 > w_root/2.
inline bool half_weight_guard(const Met& met, NodeId n) {
  const MetMetrics m(met);
  return definitely_greater(m.w(n) - met.node(n).wi / 2, m.total() / 2);
}

namespace detail {

class TheoremChecker {
 public:
  explicit TheoremChecker(const Met& met) : met_(met), metrics_(met), splits_(brute_force_splits(met)) {
    area_ = sea(met);
    for (NodeId n : area_) {
      auto& below = strict_desc_[n];
      for (NodeId d : met.subtree(n)) {
        if (d != n) below.push_back(d);
      }
    }
  }

  TheoremReport run() {
    equations();
    if (area_.empty()) return std::move(report_);
    if (is_uniform(met_)) {
      uniform_pairs();
      uniform_structural();
    } else {
      report_.skipped = {"product-law",          "heavier-divides-better", "equal-split-condition",
                         "equal-weight-equivalent", "balanced-node-optimal",  "sum-bound-better",
                         "sibling-order",         "heavy-child-better",     "light-pair-order",
                         "sibling-descendant"};
    }
    variable_lemmas();
    return std::move(report_);
  }

 private:
  double up(NodeId n) const { return splits_.at(n).up; }
  double down(NodeId n) const { return splits_.at(n).down; }
  double w(NodeId n) const { return metrics_.w(n); }
  double wi(NodeId n) const { return met_.node(n).wi; }
  double total() const { return metrics_.total(); }
  double gap(NodeId n) const { return std::fabs(down(n) - up(n)); }

  // Better / Equivalent decided on the brute-force Up/Down values.
  bool better(NodeId a, NodeId b) const { return definitely_less(gap(a), gap(b)); }
  bool equiv(NodeId a, NodeId b) const { return approx_equal(gap(a), gap(b)); }
  bool better_or_equiv(NodeId a, NodeId b) const { return less_or_equal(gap(a), gap(b)); }

  void expect(bool holds, const char* predicate, std::vector<NodeId> nodes) {
    ++report_.checks;
    if (holds) return;
    std::string detail;
    for (NodeId n : nodes) detail += (detail.empty() ? "" : "; ") + values(n);
    report_.violations.push_back({predicate, std::move(nodes), std::move(detail)});
  }

  std::string values(NodeId n) const {
    std::ostringstream os;
    os << "node " << n << ": w=" << w(n) << " wi=" << wi(n) << " up=" << up(n) << " down=" << down(n);
    return os.str();
  }

  std::vector<std::pair<NodeId, NodeId>> sibling_pairs() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (const auto& [id, n] : met_.nodes()) {
      for (NodeId a : n.children) {
        for (NodeId b : n.children) {
          if (a != b) out.emplace_back(a, b);
        }
      }
    }
    return out;
  }

  // w_root = Up + Down + wi and w = Down + wi, with the one-pass metrics on
  // the left and the enumeration on the right.
  void equations() {
    for (NodeId n : area_) {
      expect(approx_equal(total(), up(n) + down(n) + wi(n)), "root-weight-split", {n});
      expect(approx_equal(w(n), down(n) + wi(n)), "subtree-weight-split", {n});
      const NodeMetrics& m = metrics_.at(n);
      expect(approx_equal(m.up, up(n)) && approx_equal(m.down, down(n)), "metrics-match-enumeration", {n});
    }
  }

  void uniform_pairs() {
    const double unit = wi(met_.root());
    const auto optimal = optimal_set(met_);
    for (NodeId a : area_) {
      if (approx_equal(up(a), down(a))) {
        expect(std::binary_search(optimal.begin(), optimal.end(), a), "balanced-node-optimal", {a});
      }
      for (NodeId b : area_) {
        if (a == b) continue;
        // u1*d1 > u2*d2 exactly when a divides better than b.
        const double pa = up(a) * down(a);
        const double pb = up(b) * down(b);
        expect(better(a, b) == definitely_greater(pa, pb), "product-law", {a, b});
        if (definitely_greater(w(a), w(b))) {
          const double rhs = w(a) + w(b) - unit;
          expect(better(a, b) == definitely_greater(total(), rhs), "heavier-divides-better", {a, b});
          expect(equiv(a, b) == approx_equal(total(), rhs), "equal-split-condition", {a, b});
          if (greater_or_equal(total(), w(a) + w(b))) {
            expect(better(a, b), "sum-bound-better", {a, b});
          }
          if (less_or_equal(w(a), total() / 2)) {
            expect(better(a, b), "light-pair-order", {a, b});
          }
        } else if (approx_equal(w(a), w(b))) {
          expect(equiv(a, b), "equal-weight-equivalent", {a, b});
        }
      }
    }
  }

  void uniform_structural() {
    for (auto [a, b] : sibling_pairs()) {
      expect(better_or_equiv(a, b) == greater_or_equal(w(a), w(b)), "sibling-order", {a, b});
      if (better_or_equiv(a, b)) {
        for (NodeId d : strict_desc_.at(b)) {
          expect(better(a, d), "sibling-descendant", {a, b, d});
        }
      }
    }
    for (NodeId child : area_) {
      auto parent = met_.parent(child);
      if (!parent || !met_.is_undefined(*parent)) continue;
      if (definitely_greater(w(child), total() / 2)) {
        expect(better(child, *parent), "heavy-child-better", {*parent, child});
      }
    }
  }

  void variable_lemmas() {
    for (NodeId n : area_) {
      const bool below_heavier = definitely_greater(down(n), up(n));
      const bool guard = definitely_greater(w(n) - wi(n) / 2, total() / 2);
      expect(below_heavier == guard, "half-weight-guard", {n});
    }
    for (NodeId child : area_) {
      auto parent = met_.parent(child);
      if (!parent || !met_.is_undefined(*parent)) continue;
      const NodeId p = *parent;
      if (greater_or_equal(down(child), up(child))) {
        expect(better_or_equiv(child, p), "descend-when-below-heavier", {p, child});
      }
      if (less_or_equal(down(p), up(p))) {
        expect(better_or_equiv(p, child), "stop-when-above-heavier", {p, child});
      }
      if (greater_or_equal(down(p), up(p)) && less_or_equal(down(child), up(child))) {
        const double rhs = w(p) + w(child) - wi(p) / 2 - wi(child) / 2;
        expect(better_or_equiv(p, child) == greater_or_equal(total(), rhs), "parent-child-comparison", {p, child});
      }
    }
    for (auto [a, b] : sibling_pairs()) {
      if (greater_or_equal(down(a), up(a))) {
        expect(less_or_equal(down(b), up(b)), "one-heavy-sibling", {a, b});
        expect(better_or_equiv(a, b), "heavy-sibling-best", {a, b});
      }
      if (greater_or_equal(w(a), w(b)) && less_or_equal(down(a), up(a))) {
        expect(less_or_equal(down(b), up(b)), "lighter-sibling-stays-light", {a, b});
      }
      if (greater_or_equal(up(a), down(a)) && greater_or_equal(up(b), down(b))) {
        const bool by_half = greater_or_equal(w(a) - wi(a) / 2, w(b) - wi(b) / 2);
        expect(better_or_equiv(a, b) == by_half, "light-sibling-order", {a, b});
      }
      for (NodeId d : strict_desc_.at(b)) {
        if (greater_or_equal(down(a), up(a)) && equiv(a, b)) {
          expect(better_or_equiv(a, d), "equivalent-sibling-descendant", {a, b, d});
        }
        if (less_or_equal(down(a), up(a)) && less_or_equal(down(b), up(b)) && equiv(a, b)) {
          expect(better_or_equiv(a, d), "light-equivalent-sibling-descendant", {a, b, d});
        }
        if (better(a, b)) {
          expect(better(a, d), "better-sibling-descendant", {a, b, d});
        }
      }
    }
  }

  const Met& met_;
  MetMetrics metrics_;
  std::unordered_map<NodeId, BruteForceSplit> splits_;
  std::vector<NodeId> area_;
  std::unordered_map<NodeId, std::vector<NodeId>> strict_desc_;
  TheoremReport report_;
};

}  // namespace detail

/// Evaluates every node-ordering theorem and lemma applicable to `met` over
/// all qualifying node pairs. Uniform-only statements are skipped on
/// variable-weight trees. An empty violation list means the tree conforms.
inline TheoremReport check_theorems(const Met& met) {
  if (met.empty()) return {};
  return detail::TheoremChecker(met).run();
}

}  // namespace adq
