#pragma once

#include <string>

#include "adq/formats.hpp"
#include "adq/generate.hpp"

namespace testing_support {

inline std::string fixture_path(const std::string& name) { return std::string(ADQ_FIXTURE_DIR) + "/" + name; }

inline std::string data_path(const std::string& name) { return std::string(ADQ_TEST_DATA_DIR) + "/" + name; }

inline adq::Met fixture(const std::string& name) { return adq::load_et(fixture_path(name)); }

inline adq::MetNode node(std::uint64_t id, std::vector<std::uint64_t> children = {}, double wi = 1.0,
                         std::string label = {}) {
  adq::MetNode n{adq::NodeId{id}, label.empty() ? "n" + std::to_string(id) : label, wi, {}};
  for (auto c : children) n.children.push_back(adq::NodeId{c});
  return n;
}

// root(1) -> 2 -> 3 ... -> n
inline adq::Met chain(std::size_t n, bool root_wrong = false, double wi = 1.0) {
  std::vector<adq::MetNode> nodes;
  for (std::uint64_t i = 1; i <= n; ++i) {
    nodes.push_back(node(i, i < n ? std::vector<std::uint64_t>{i + 1} : std::vector<std::uint64_t>{}, wi));
  }
  return adq::Met(std::move(nodes), adq::NodeId{1}, root_wrong, "chain");
}

inline adq::Met random_uniform(std::uint64_t seed, std::size_t max_nodes, bool root_wrong = false) {
  adq::GenParams p;
  p.seed = seed;
  p.node_count = root_wrong ? 2 + seed % (max_nodes - 1) : 1 + seed % max_nodes;
  p.max_children = seed % 4;
  p.root_marked_wrong = root_wrong;
  return adq::gen_random(p);
}

inline adq::Met random_variable(std::uint64_t seed, std::size_t max_nodes, double zero_probability = 0.15) {
  adq::GenParams p;
  p.seed = seed;
  p.node_count = 1 + seed % max_nodes;
  p.max_children = seed % 4;
  p.weight_mode = adq::WeightMode::DecimalRange;
  p.zero_probability = zero_probability;
  p.root_marked_wrong = seed % 5 == 0 && p.node_count > 1;
  return adq::gen_random(p);
}

}  // namespace testing_support
