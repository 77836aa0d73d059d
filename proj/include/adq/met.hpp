#pragma once

// Marked execution trees: the tree a debugging session shrinks as the
// oracle answers questions, plus the weight quantities every strategy reads.

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "adq/errors.hpp"
#include "adq/tolerance.hpp"

namespace adq {

struct NodeId {
  std::uint64_t value{};

  constexpr auto operator<=>(const NodeId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value; }

inline std::string to_string(NodeId id) { return std::to_string(id.value); }

}  // namespace adq

template <>
struct std::hash<adq::NodeId> {
  std::size_t operator()(adq::NodeId id) const noexcept { return std::hash<std::uint64_t>{}(id.value); }
};

namespace adq {

enum class Marking { Wrong, Undefined };

enum class Answer { Correct, Wrong };

inline const char* to_string(Marking m) { return m == Marking::Wrong ? "wrong" : "undefined"; }

inline const char* to_string(Answer a) { return a == Answer::Wrong ? "wrong" : "correct"; }

struct MetNode {
  NodeId id;
  std::string label;
  double wi = 1.0;  // individual weight
  std::vector<NodeId> children;
};

/// A rooted tree with a marking. Only the root can be marked Wrong, so the
/// marking is stored as a single flag and every other node is Undefined.
///
/// A default-constructed Met is empty: every node has been answered and the
/// session it belongs to is over.
class Met {
 public:
  Met() = default;

  /// Validates the node list and throws invalid_met_error naming the first
  /// violation found.
  Met(std::vector<MetNode> nodes, NodeId root, bool root_wrong = false, std::string name = {})
      : root_(root), root_wrong_(root_wrong), name_(std::move(name)) {
    for (auto& n : nodes) {
      if (!(n.wi >= 0.0) || !std::isfinite(n.wi)) {
        throw invalid_met_error("negative weight " + std::to_string(n.wi) + " at node " + to_string(n.id));
      }
      const NodeId id = n.id;
      if (!nodes_.emplace(id, std::move(n)).second) {
        throw invalid_met_error("duplicate id " + to_string(id));
      }
    }
    if (!nodes_.contains(root_)) {
      throw invalid_met_error("missing root " + to_string(root_));
    }
    for (const auto& [id, n] : nodes_) {
      std::unordered_set<NodeId> seen;
      for (NodeId c : n.children) {
        if (!nodes_.contains(c)) {
          throw invalid_met_error("dangling child reference " + to_string(c) + " from node " + to_string(id));
        }
        if (!seen.insert(c).second) {
          throw invalid_met_error("node " + to_string(id) + " lists child " + to_string(c) + " twice");
        }
        if (c == id || c == root_) {
          throw invalid_met_error("cycle through node " + to_string(c));
        }
        if (!parent_.emplace(c, id).second) {
          throw invalid_met_error("node " + to_string(c) + " has multiple parents");
        }
      }
    }
    check_reachability();
  }

  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  NodeId root() const {
    if (empty()) throw lookup_error("empty tree has no root");
    return root_;
  }

  bool root_wrong() const { return !empty() && root_wrong_; }

  bool contains(NodeId id) const { return nodes_.contains(id); }

  const MetNode& node(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw lookup_error("unknown node " + to_string(id));
    return it->second;
  }

  Marking marking(NodeId id) const {
    if (!contains(id)) throw lookup_error("unknown node " + to_string(id));
    return (id == root_ && root_wrong_) ? Marking::Wrong : Marking::Undefined;
  }

  bool is_undefined(NodeId id) const { return marking(id) == Marking::Undefined; }

  std::optional<NodeId> parent(NodeId id) const {
    if (!contains(id)) throw lookup_error("unknown node " + to_string(id));
    auto it = parent_.find(id);
    if (it == parent_.end()) return std::nullopt;
    return it->second;
  }

  /// Nodes in id order.
  const std::map<NodeId, MetNode>& nodes() const { return nodes_; }

  bool is_ancestor_or_self(NodeId ancestor, NodeId id) const {
    if (!contains(ancestor) || !contains(id)) return false;
    std::optional<NodeId> cur = id;
    while (cur) {
      if (*cur == ancestor) return true;
      cur = parent(*cur);
    }
    return false;
  }

  std::vector<NodeId> preorder() const {
    std::vector<NodeId> out;
    if (empty()) return out;
    out.reserve(size());
    std::vector<NodeId> stack{root_};
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      out.push_back(id);
      const auto& ch = node(id).children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return out;
  }

  std::vector<NodeId> postorder() const {
    std::vector<NodeId> out;
    if (empty()) return out;
    out.reserve(size());
    // (node, next child index)
    std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      const auto& ch = node(id).children;
      if (next < ch.size()) {
        NodeId c = ch[next++];
        stack.emplace_back(c, 0);
      } else {
        out.push_back(id);
        stack.pop_back();
      }
    }
    return out;
  }

  std::vector<NodeId> subtree(NodeId id) const {
    std::vector<NodeId> out;
    std::vector<NodeId> stack{id};
    node(id);
    while (!stack.empty()) {
      NodeId cur = stack.back();
      stack.pop_back();
      out.push_back(cur);
      for (NodeId c : node(cur).children) stack.push_back(c);
    }
    return out;
  }

  /// Copy with the subtree rooted at `id` removed. Removing the root yields the empty tree.
  Met without_subtree(NodeId id) const {
    if (id == root()) {
      Met out;
      out.name_ = name_;
      return out;
    }
    Met out = *this;
    for (NodeId gone : subtree(id)) {
      out.nodes_.erase(gone);
      out.parent_.erase(gone);
    }
    auto& siblings = out.nodes_.at(*parent(id)).children;
    std::erase(siblings, id);
    return out;
  }

  /// Copy restricted to the subtree rooted at `id`, with `id` as the new root marked Wrong.
  Met subtree_marked_wrong(NodeId id) const {
    Met out;
    out.root_ = id;
    out.root_wrong_ = true;
    out.name_ = name_;
    for (NodeId keep : subtree(id)) {
      out.nodes_.emplace(keep, node(keep));
      if (keep != id) out.parent_.emplace(keep, parent_.at(keep));
    }
    return out;
  }

 private:
  void check_reachability() const {
    std::unordered_set<NodeId> reached;
    std::vector<NodeId> stack{root_};
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      reached.insert(id);
      for (NodeId c : nodes_.at(id).children) stack.push_back(c);
    }
    if (reached.size() == nodes_.size()) return;
    // Every unreachable node has exactly one parent; following parents either
    // reaches a parentless node (a second root) or loops.
    for (const auto& [id, n] : nodes_) {
      if (reached.contains(id)) continue;
      std::unordered_set<NodeId> path;
      std::optional<NodeId> cur = id;
      while (cur) {
        if (!path.insert(*cur).second) throw invalid_met_error("cycle through node " + to_string(*cur));
        auto it = parent_.find(*cur);
        cur = it == parent_.end() ? std::nullopt : std::optional<NodeId>(it->second);
      }
      throw invalid_met_error("node " + to_string(id) + " is not reachable from root " + to_string(root_));
    }
  }

  std::map<NodeId, MetNode> nodes_;
  std::unordered_map<NodeId, NodeId> parent_;
  NodeId root_{};
  bool root_wrong_ = false;
  std::string name_;
};

// ---------------------------------------------------------------------------
// Weights

struct NodeMetrics {
  double w = 0.0;     // subtree weight, counting only Undefined nodes
  double down = 0.0;  // Undefined weight strictly below the node
  double up = 0.0;    // Undefined weight outside the node's subtree
  std::size_t legacy = 0;  // node count of the subtree, marking ignored
};

/// Per-node weights for one tree state, computed in a single bottom-up pass.
class MetMetrics {
 public:
  explicit MetMetrics(const Met& met) {
    if (met.empty()) return;
    table_.reserve(met.size());
    for (NodeId id : met.postorder()) {
      const MetNode& n = met.node(id);
      NodeMetrics m;
      m.legacy = 1;
      for (NodeId c : n.children) {
        const NodeMetrics& cm = table_.at(c);
        m.down += cm.w;
        m.legacy += cm.legacy;
      }
      m.w = m.down + (met.is_undefined(id) ? n.wi : 0.0);
      table_.emplace(id, m);
    }
    total_ = table_.at(met.root()).w;
    for (auto& [id, m] : table_) {
      m.up = met.is_undefined(id) ? total_ - m.w : 0.0;
    }
  }

  const NodeMetrics& at(NodeId id) const {
    auto it = table_.find(id);
    if (it == table_.end()) throw lookup_error("unknown node " + to_string(id));
    return it->second;
  }

  double w(NodeId id) const { return at(id).w; }
  double total() const { return total_; }

 private:
  std::unordered_map<NodeId, NodeMetrics> table_;
  double total_ = 0.0;
};

inline MetMetrics compute_metrics(const Met& met) { return MetMetrics(met); }

inline double weight(const Met& met, NodeId n) {
  met.node(n);
  return MetMetrics(met).w(n);
}

inline std::size_t legacy_weight(const Met& met, NodeId n) { return met.subtree(n).size(); }

/// Search area: the Undefined nodes, in id order.
inline std::vector<NodeId> sea(const Met& met) {
  std::vector<NodeId> out;
  for (const auto& [id, n] : met.nodes()) {
    if (met.is_undefined(id)) out.push_back(id);
  }
  return out;
}

inline bool sea_empty(const Met& met) { return met.empty() || (met.size() == 1 && met.root_wrong()); }

struct UpDown {
  double up = 0.0;
  double down = 0.0;
};

inline void require_in_sea(const Met& met, NodeId n) {
  if (met.marking(n) != Marking::Undefined) {
    throw domain_error("node " + to_string(n) + " is not in the search area");
  }
}

inline UpDown up_down(const Met& met, NodeId n) {
  require_in_sea(met, n);
  const NodeMetrics& m = MetMetrics(met).at(n);
  return {m.up, m.down};
}

enum class Division { Better, Equivalent, Worse };

inline const char* to_string(Division d) {
  switch (d) {
    case Division::Better: return "better";
    case Division::Equivalent: return "equivalent";
    case Division::Worse: return "worse";
  }
  return "?";
}

/// |Down(n) - Up(n)|: how far a question at n is from halving the search area.
inline double imbalance(const NodeMetrics& m) { return std::fabs(m.down - m.up); }

inline Division compare_division(const MetMetrics& metrics, NodeId n1, NodeId n2) {
  const double a = imbalance(metrics.at(n1));
  const double b = imbalance(metrics.at(n2));
  if (approx_equal(a, b)) return Division::Equivalent;
  return a < b ? Division::Better : Division::Worse;
}

inline Division divides_better(const Met& met, NodeId n1, NodeId n2) {
  require_in_sea(met, n1);
  require_in_sea(met, n2);
  return compare_division(MetMetrics(met), n1, n2);
}

/// One step of the debugging loop: Wrong keeps only n's subtree (n becomes the
/// Wrong root), Correct removes n's subtree.
inline Met apply_answer(const Met& met, NodeId n, Answer a) {
  require_in_sea(met, n);
  return a == Answer::Wrong ? met.subtree_marked_wrong(n) : met.without_subtree(n);
}

/// True when every individual weight is the same strictly positive value.
inline bool is_uniform(const Met& met) {
  if (met.empty()) return true;
  const double first = met.nodes().begin()->second.wi;
  if (!(first > 0.0)) return false;
  for (const auto& [id, n] : met.nodes()) {
    if (n.wi != first) return false;
  }
  return true;
}

}  // namespace adq
