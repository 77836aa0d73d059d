#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "adq/met.hpp"

namespace adq {

enum class WeightMode { Uniform, DecimalRange };

struct GenParams {
  std::size_t node_count = 10;
  std::size_t max_children = 0;  // 0: unbounded
  WeightMode weight_mode = WeightMode::Uniform;
  double uniform_weight = 1.0;
  double lo = 0.1;  // decimal-range bounds
  double hi = 10.0;
  double zero_probability = 0.0;  // decimal-range only: chance a node gets weight 0
  bool root_marked_wrong = false;
  std::uint64_t seed = 1;
  std::string name;
};

inline void validate(const GenParams& p) {
  if (p.node_count < 1) throw error("node_count must be at least 1");
  if (p.weight_mode == WeightMode::Uniform && !(p.uniform_weight > 0)) throw error("uniform weight must be positive");
  if (p.weight_mode == WeightMode::DecimalRange) {
    if (!(p.lo >= 0) || !(p.hi >= p.lo)) throw error("decimal range needs 0 <= lo <= hi");
    if (!(p.zero_probability >= 0 && p.zero_probability <= 1)) throw error("zero_probability must be in [0, 1]");
  }
  if (p.root_marked_wrong && p.node_count < 2) throw error("a Wrong root needs at least one other node");
}

/// Random recursive tree: node k attaches under a uniformly chosen earlier
/// node that still has room. Ids are 1..node_count in creation order, so the
/// root is 1. Deterministic in `seed` for a given standard library.
inline Met gen_random(const GenParams& p) {
  validate(p);
  std::mt19937_64 rng(p.seed);
  std::vector<MetNode> nodes(p.node_count);
  std::vector<std::size_t> open;  // indices that can still take children
  for (std::size_t k = 0; k < p.node_count; ++k) {
    MetNode& n = nodes[k];
    n.id = NodeId{k + 1};
    n.label = "node " + std::to_string(k + 1);
    if (p.weight_mode == WeightMode::Uniform) {
      n.wi = p.uniform_weight;
    } else if (p.zero_probability > 0 && std::uniform_real_distribution<double>(0, 1)(rng) < p.zero_probability) {
      n.wi = 0.0;
    } else {
      n.wi = std::uniform_real_distribution<double>(p.lo, p.hi)(rng);
    }
    if (k > 0) {
      const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng);
      const std::size_t parent = open[pick];
      nodes[parent].children.push_back(n.id);
      if (p.max_children != 0 && nodes[parent].children.size() >= p.max_children) {
        open[pick] = open.back();
        open.pop_back();
      }
    }
    open.push_back(k);
  }
  return Met(std::move(nodes), NodeId{1}, p.root_marked_wrong,
             p.name.empty() ? "random-" + std::to_string(p.seed) : p.name);
}

}  // namespace adq
