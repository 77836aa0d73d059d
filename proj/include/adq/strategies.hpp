#pragma once

// Question-selection strategies. Each takes the current tree and returns the
// node to ask next; the complete variants also return every equally good
// alternative they found along their search path.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adq/met.hpp"

namespace adq {

enum class StrategyId {
  DQS,                   // divide & query, Shapiro
  DQH,                   // divide & query, Hirunkitti
  DQO,                   // optimal D&Q, uniform weights
  DQO_COMPLETE,          // optimal D&Q, uniform weights, all optimal nodes on the path
  DQO_GENERAL,           // optimal D&Q, weights >= 0
  DQO_GENERAL_COMPLETE,  // optimal D&Q, weights > 0, all optimal nodes on the path
  TOP_DOWN,
  HEAVIEST_FIRST,
  SINGLE_STEPPING,
};

inline constexpr std::array<StrategyId, 9> all_strategies{
    StrategyId::DQS,         StrategyId::DQH,          StrategyId::DQO,
    StrategyId::DQO_COMPLETE, StrategyId::DQO_GENERAL, StrategyId::DQO_GENERAL_COMPLETE,
    StrategyId::TOP_DOWN,    StrategyId::HEAVIEST_FIRST, StrategyId::SINGLE_STEPPING,
};

inline std::string_view to_string(StrategyId id) {
  switch (id) {
    case StrategyId::DQS: return "dqs";
    case StrategyId::DQH: return "dqh";
    case StrategyId::DQO: return "dqo";
    case StrategyId::DQO_COMPLETE: return "dqo-complete";
    case StrategyId::DQO_GENERAL: return "dqo-general";
    case StrategyId::DQO_GENERAL_COMPLETE: return "dqo-general-complete";
    case StrategyId::TOP_DOWN: return "td";
    case StrategyId::HEAVIEST_FIRST: return "hf";
    case StrategyId::SINGLE_STEPPING: return "ss";
  }
  return "?";
}

inline std::optional<StrategyId> try_parse_strategy(std::string_view name) {
  for (StrategyId id : all_strategies) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

inline StrategyId parse_strategy(std::string_view name) {
  if (auto id = try_parse_strategy(name)) return *id;
  throw error("unknown strategy '" + std::string(name) +
              "' (expected one of dqs, dqh, dqo, dqo-complete, dqo-general, dqo-general-complete, td, hf, ss)");
}

struct Selection {
  NodeId chosen;
  std::vector<NodeId> alternatives;  // sorted; empty unless a complete variant produced it

  bool operator==(const Selection&) const = default;
};

namespace detail {

inline void require_search_area(const Met& met) {
  if (sea_empty(met)) throw precondition_error("search area is empty");
}

inline void require_uniform(const Met& met, std::string_view strategy) {
  const auto& nodes = met.nodes();
  const MetNode& first = nodes.begin()->second;
  if (!(first.wi > 0.0)) {
    throw precondition_error(std::string(strategy) + " requires positive individual weights; node " +
                             to_string(first.id) + " has weight " + std::to_string(first.wi));
  }
  for (const auto& [id, n] : nodes) {
    if (n.wi != first.wi) {
      throw precondition_error(std::string(strategy) + " requires uniform individual weights; nodes " +
                               to_string(first.id) + " and " + to_string(id) + " differ (" +
                               std::to_string(first.wi) + " vs " + std::to_string(n.wi) + ")");
    }
  }
}

inline void require_positive(const Met& met, std::string_view strategy) {
  for (const auto& [id, n] : met.nodes()) {
    if (!(n.wi > 0.0)) {
      throw precondition_error(std::string(strategy) + " requires positive individual weights; node " +
                               to_string(id) + " has weight " + std::to_string(n.wi));
    }
  }
}

// Member of `ids` maximizing key; approximately equal keys go to the lowest id.
template <typename Key>
NodeId argmax(const std::vector<NodeId>& ids, Key key) {
  NodeId best = ids.front();
  double best_key = key(best);
  for (NodeId id : ids) {
    const double k = key(id);
    if (definitely_greater(k, best_key) || (approx_equal(k, best_key) && id < best)) {
      best = id;
      best_key = k;
    }
  }
  return best;
}

template <typename Key>
std::vector<NodeId> all_argmax(const std::vector<NodeId>& ids, Key key) {
  const double top = key(argmax(ids, key));
  std::vector<NodeId> out;
  for (NodeId id : ids) {
    if (approx_equal(key(id), top)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Selection make_set(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return {nodes.front(), std::move(nodes)};
}

struct LegacyCandidates {
  std::optional<NodeId> below;  // heaviest with legacy weight <= total/2
  std::optional<NodeId> above;  // lightest with legacy weight >= total/2
  std::size_t total = 0;
};

// Legacy D&Q weighs every node in the tree, including the Wrong root, but only
// asks Undefined nodes.
inline LegacyCandidates legacy_candidates(const Met& met, const MetMetrics& metrics) {
  LegacyCandidates out;
  out.total = metrics.at(met.root()).legacy;
  for (NodeId id : sea(met)) {  // ascending ids, so strict comparisons keep the lowest id on ties
    const std::size_t lw = metrics.at(id).legacy;
    if (2 * lw <= out.total && (!out.below || lw > metrics.at(*out.below).legacy)) out.below = id;
    if (2 * lw >= out.total && (!out.above || lw < metrics.at(*out.above).legacy)) out.above = id;
  }
  return out;
}

}  // namespace detail

inline Selection select_shapiro(const Met& met) {
  detail::require_search_area(met);
  const MetMetrics metrics(met);
  const auto c = detail::legacy_candidates(met, metrics);
  if (c.below) return {*c.below, {}};
  const auto ids = sea(met);
  NodeId lightest = ids.front();
  for (NodeId id : ids) {
    if (metrics.at(id).legacy < metrics.at(lightest).legacy) lightest = id;
  }
  return {lightest, {}};
}

inline Selection select_hirunkitti(const Met& met) {
  detail::require_search_area(met);
  const MetMetrics metrics(met);
  const auto c = detail::legacy_candidates(met, metrics);
  if (!c.below) return {*c.above, {}};
  if (!c.above) return {*c.below, {}};
  // Distances to total/2, doubled to stay in integers.
  const auto dist = [&](NodeId id) {
    const long long twice = 2 * static_cast<long long>(metrics.at(id).legacy);
    const long long total = static_cast<long long>(c.total);
    return twice > total ? twice - total : total - twice;
  };
  const long long db = dist(*c.below);
  const long long da = dist(*c.above);
  if (db != da) return {db < da ? *c.below : *c.above, {}};
  return {std::min(*c.below, *c.above), {}};
}

/// Optimal D&Q for uniform trees: walk down through heaviest children while
/// they outweigh half the tree, then pick between the last two nodes.
inline Selection select_dqo(const Met& met) {
  detail::require_search_area(met);
  detail::require_uniform(met, "dqo");
  const MetMetrics m(met);
  const NodeId root = met.root();
  const double total = m.total();
  const double wi_root = met.node(root).wi;
  const auto by_weight = [&](NodeId id) { return m.w(id); };

  NodeId candidate = root;
  NodeId best = root;
  do {
    best = candidate;
    const auto& children = met.node(best).children;
    if (children.empty()) return {best, {}};
    candidate = detail::argmax(children, by_weight);
  } while (definitely_greater(m.w(candidate), total / 2));

  if (met.marking(best) == Marking::Wrong) return {candidate, {}};
  if (greater_or_equal(total, m.w(best) + m.w(candidate) - wi_root)) return {best, {}};
  return {candidate, {}};
}

inline Selection select_dqo_complete(const Met& met) {
  detail::require_search_area(met);
  detail::require_uniform(met, "dqo-complete");
  const MetMetrics m(met);
  const NodeId root = met.root();
  const double total = m.total();
  const double wi_root = met.node(root).wi;
  const auto by_weight = [&](NodeId id) { return m.w(id); };

  NodeId candidate = root;
  NodeId best = root;
  do {
    best = candidate;
    const auto& children = met.node(best).children;
    if (children.empty()) return detail::make_set({best});
    candidate = detail::argmax(children, by_weight);
  } while (definitely_greater(m.w(candidate), total / 2));

  std::vector<NodeId> candidates = detail::all_argmax(met.node(best).children, by_weight);
  if (met.marking(best) == Marking::Wrong) return detail::make_set(candidates);
  const double rhs = m.w(best) + m.w(candidate) - wi_root;
  if (definitely_greater(total, rhs)) return detail::make_set({best});
  if (approx_equal(total, rhs)) {
    candidates.push_back(best);
    return detail::make_set(candidates);
  }
  return detail::make_set(candidates);
}

/// Optimal D&Q for arbitrary non-negative weights. The descent compares
/// w - wi/2 against half the tree, which is the same as asking whether the
/// Undefined weight below a node exceeds the weight above it.
inline Selection select_dqo_general(const Met& met) {
  detail::require_search_area(met);
  for (const auto& [id, n] : met.nodes()) {
    if (!(n.wi >= 0.0)) throw precondition_error("dqo-general requires non-negative weights; node " + to_string(id));
  }
  const MetMetrics m(met);
  const double total = m.total();
  const auto by_weight = [&](NodeId id) { return m.w(id); };
  const auto by_half_weight = [&](NodeId id) { return m.w(id) - met.node(id).wi / 2; };

  NodeId candidate = met.root();
  NodeId best = candidate;
  do {
    best = candidate;
    const auto& children = met.node(best).children;
    if (children.empty()) return {best, {}};
    candidate = detail::argmax(children, by_weight);
  } while (definitely_greater(by_half_weight(candidate), total / 2));

  candidate = detail::argmax(met.node(best).children, by_half_weight);
  if (met.marking(best) == Marking::Wrong) return {candidate, {}};
  const double rhs = m.w(best) + m.w(candidate) - met.node(best).wi / 2 - met.node(candidate).wi / 2;
  if (greater_or_equal(total, rhs)) return {best, {}};
  return {candidate, {}};
}

inline Selection select_dqo_general_complete(const Met& met) {
  detail::require_search_area(met);
  detail::require_positive(met, "dqo-general-complete");
  const MetMetrics m(met);
  const double total = m.total();
  const auto by_weight = [&](NodeId id) { return m.w(id); };
  const auto by_half_weight = [&](NodeId id) { return m.w(id) - met.node(id).wi / 2; };

  NodeId candidate = met.root();
  NodeId best = candidate;
  do {
    best = candidate;
    const auto& children = met.node(best).children;
    if (children.empty()) return detail::make_set({best});
    candidate = detail::argmax(children, by_weight);
  } while (definitely_greater(by_half_weight(candidate), total / 2));

  std::vector<NodeId> candidates = detail::all_argmax(met.node(best).children, by_half_weight);
  candidate = candidates.front();
  if (met.marking(best) == Marking::Wrong) return detail::make_set(candidates);
  const double rhs = m.w(best) + m.w(candidate) - met.node(best).wi / 2 - met.node(candidate).wi / 2;
  if (definitely_greater(total, rhs)) return detail::make_set({best});
  if (approx_equal(total, rhs)) {
    candidates.push_back(best);
    return detail::make_set(candidates);
  }
  return detail::make_set(candidates);
}

inline Selection select_baseline(const Met& met, StrategyId id) {
  detail::require_search_area(met);
  const NodeId root = met.root();
  const auto& children = met.node(root).children;
  switch (id) {
    case StrategyId::TOP_DOWN:
      return {children.empty() ? root : children.front(), {}};
    case StrategyId::HEAVIEST_FIRST: {
      if (children.empty()) return {root, {}};
      const MetMetrics m(met);
      return {detail::argmax(children, [&](NodeId c) { return m.w(c); }), {}};
    }
    case StrategyId::SINGLE_STEPPING:
      for (NodeId n : met.postorder()) {
        if (met.is_undefined(n)) return {n, {}};
      }
      break;
    default:
      throw precondition_error(std::string(to_string(id)) + " is not a baseline strategy");
  }
  throw precondition_error("search area is empty");
}

/// Throws precondition_error when `id` cannot run on `met` (weight class or empty search area).
inline void check_applicable(const Met& met, StrategyId id) {
  detail::require_search_area(met);
  switch (id) {
    case StrategyId::DQO:
    case StrategyId::DQO_COMPLETE:
      detail::require_uniform(met, to_string(id));
      break;
    case StrategyId::DQO_GENERAL_COMPLETE:
      detail::require_positive(met, to_string(id));
      break;
    default:
      break;
  }
}

inline bool is_applicable(const Met& met, StrategyId id) {
  try {
    check_applicable(met, id);
    return true;
  } catch (const precondition_error&) {
    return false;
  }
}

inline Selection select(const Met& met, StrategyId id) {
  switch (id) {
    case StrategyId::DQS: return select_shapiro(met);
    case StrategyId::DQH: return select_hirunkitti(met);
    case StrategyId::DQO: return select_dqo(met);
    case StrategyId::DQO_COMPLETE: return select_dqo_complete(met);
    case StrategyId::DQO_GENERAL: return select_dqo_general(met);
    case StrategyId::DQO_GENERAL_COMPLETE: return select_dqo_general_complete(met);
    case StrategyId::TOP_DOWN:
    case StrategyId::HEAVIEST_FIRST:
    case StrategyId::SINGLE_STEPPING: return select_baseline(met, id);
  }
  throw precondition_error("unknown strategy");
}

}  // namespace adq
