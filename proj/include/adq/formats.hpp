#pragma once

// ET documents on disk:
//
//   {"name": "...", "root": 1, "root_marked_wrong": false,
//    "nodes": [{"id": 1, "label": "...", "weight": 1.0, "children": [2, 3]}, ...]}
//
// "weight" defaults to 1.0 and "root_marked_wrong" to false. Unknown fields
// are ignored, so fixtures may carry a "comment".

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "adq/met.hpp"

namespace adq {

struct EtNode {
  std::uint64_t id = 0;
  std::string label;
  double weight = 1.0;
  std::vector<std::uint64_t> children;
};

struct EtDocument {
  std::string name;
  std::uint64_t root = 0;
  bool root_marked_wrong = false;
  std::vector<EtNode> nodes;
};

namespace detail {

inline std::uint64_t read_id(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_unsigned()) {
    throw format_error(where + " must be a non-negative integer id, got " + v.dump());
  }
  return v.get<std::uint64_t>();
}

}  // namespace detail

inline EtDocument document_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw format_error("ET document must be a JSON object");
  EtDocument doc;
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) throw format_error("\"name\" must be a string");
    doc.name = it->get<std::string>();
  }
  auto root = j.find("root");
  if (root == j.end()) throw format_error("missing root: document has no \"root\" field");
  doc.root = detail::read_id(*root, "\"root\"");
  if (auto it = j.find("root_marked_wrong"); it != j.end()) {
    if (!it->is_boolean()) throw format_error("\"root_marked_wrong\" must be a boolean");
    doc.root_marked_wrong = it->get<bool>();
  }
  auto nodes = j.find("nodes");
  if (nodes == j.end() || !nodes->is_array()) throw format_error("\"nodes\" must be an array");
  for (const auto& jn : *nodes) {
    if (!jn.is_object()) throw format_error("each node must be an object");
    EtNode n;
    auto id = jn.find("id");
    if (id == jn.end()) throw format_error("node without \"id\"");
    n.id = detail::read_id(*id, "node \"id\"");
    const std::string where = "node " + std::to_string(n.id);
    if (auto it = jn.find("label"); it != jn.end()) {
      if (!it->is_string()) throw format_error(where + ": \"label\" must be a string");
      n.label = it->get<std::string>();
    }
    if (auto it = jn.find("weight"); it != jn.end()) {
      if (!it->is_number()) throw format_error(where + ": \"weight\" must be a number");
      n.weight = it->get<double>();
      if (n.weight < 0) throw format_error("negative weight " + it->dump() + " at " + where);
    }
    if (auto it = jn.find("children"); it != jn.end()) {
      if (!it->is_array()) throw format_error(where + ": \"children\" must be an array");
      for (const auto& c : *it) n.children.push_back(detail::read_id(c, where + " child"));
    }
    doc.nodes.push_back(std::move(n));
  }
  return doc;
}

inline EtDocument parse_document(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw format_error(std::string("invalid JSON: ") + e.what());
  }
  return document_from_json(j);
}

/// Structural validation happens here; violations surface as format_error.
inline Met to_met(const EtDocument& doc) {
  std::vector<MetNode> nodes;
  nodes.reserve(doc.nodes.size());
  for (const EtNode& n : doc.nodes) {
    MetNode m{NodeId{n.id}, n.label, n.weight, {}};
    for (auto c : n.children) m.children.push_back(NodeId{c});
    nodes.push_back(std::move(m));
  }
  try {
    return Met(std::move(nodes), NodeId{doc.root}, doc.root_marked_wrong, doc.name);
  } catch (const invalid_met_error& e) {
    throw format_error(e.what());
  }
}

inline EtDocument to_document(const Met& met) {
  EtDocument doc;
  doc.name = met.name();
  if (met.empty()) return doc;
  doc.root = met.root().value;
  doc.root_marked_wrong = met.root_wrong();
  for (const auto& [id, n] : met.nodes()) {
    EtNode en{id.value, n.label, n.wi, {}};
    for (NodeId c : n.children) en.children.push_back(c.value);
    doc.nodes.push_back(std::move(en));
  }
  return doc;
}

inline nlohmann::ordered_json to_json(const EtDocument& doc) {
  nlohmann::ordered_json out;
  out["name"] = doc.name;
  out["root"] = doc.root;
  out["root_marked_wrong"] = doc.root_marked_wrong;
  out["nodes"] = nlohmann::ordered_json::array();
  for (const EtNode& n : doc.nodes) {
    nlohmann::ordered_json jn;
    jn["id"] = n.id;
    jn["label"] = n.label;
    jn["weight"] = n.weight;
    jn["children"] = n.children;
    out["nodes"].push_back(std::move(jn));
  }
  return out;
}

inline Met parse_et(std::string_view text) { return to_met(parse_document(text)); }

/// Nodes in id order; weights printed as shortest round-trip decimals.
inline std::string serialize_et(const Met& met) { return to_json(to_document(met)).dump(2) + "\n"; }

inline Met load_et(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw format_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  Met met = parse_et(ss.str());
  if (met.name().empty()) met.set_name(path);
  return met;
}

inline void save_et(const Met& met, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw format_error("cannot write " + path);
  out << serialize_et(met);
}

}  // namespace adq
