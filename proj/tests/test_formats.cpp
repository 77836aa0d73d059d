#include <filesystem>

#include <gtest/gtest.h>

#include "adq/formats.hpp"
#include "adq/generate.hpp"
#include "fixtures.hpp"

using namespace adq;
using testing_support::data_path;
using testing_support::fixture;
using testing_support::fixture_path;

namespace {

void expect_same(const Met& a, const Met& b) {
  EXPECT_EQ(a.name(), b.name());
  EXPECT_EQ(a.root(), b.root());
  EXPECT_EQ(a.root_wrong(), b.root_wrong());
  ASSERT_EQ(a.size(), b.size());
  for (const auto& [id, n] : a.nodes()) {
    const MetNode& o = b.node(id);
    EXPECT_EQ(n.label, o.label);
    EXPECT_EQ(n.wi, o.wi);
    EXPECT_EQ(n.children, o.children);
  }
}

std::string parse_error_text(const std::string& text) {
  try {
    parse_et(text);
  } catch (const format_error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseEt, TwoNodeChain) {
  const Met m = parse_et(R"({"name": "c", "root": 1, "nodes": [{"id": 1, "label": "a", "children": [2]},
                                                                {"id": 2, "label": "b", "children": []}]})");
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.node(NodeId{1}).children, std::vector<NodeId>{NodeId{2}});
  EXPECT_EQ(m.node(NodeId{2}).wi, 1.0);
  EXPECT_FALSE(m.root_wrong());
}

TEST(ParseEt, DanglingReferenceNamed) {
  const std::string msg =
      parse_error_text(R"({"name": "x", "root": 1, "nodes": [{"id": 1, "label": "a", "children": [9]}]})");
  EXPECT_NE(msg.find("dangling"), std::string::npos) << msg;
  EXPECT_NE(msg.find("9"), std::string::npos) << msg;
}

TEST(ParseEt, Figure7Total) {
  const Met m = fixture("figure7.json");
  EXPECT_EQ(MetMetrics(m).total(), 20.0);
}

TEST(ParseEt, MalformedCorpusRejected) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"duplicate_id.json", "duplicate"},   {"dangling_reference.json", "dangling"}, {"cycle.json", "cycle"},
      {"negative_weight.json", "negative"}, {"missing_root.json", "missing root"},
  };
  for (const auto& [file, needle] : cases) {
    try {
      load_et(data_path("malformed/" + file));
      ADD_FAILURE() << file << " parsed";
    } catch (const format_error& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << file << ": " << e.what();
    }
  }
  EXPECT_EQ(std::filesystem::directory_entry(data_path("malformed")).exists(), true);
}

TEST(ParseEt, RejectsBadJsonAndTypes) {
  EXPECT_FALSE(parse_error_text("{not json").empty());
  EXPECT_FALSE(parse_error_text("[]").empty());
  EXPECT_FALSE(parse_error_text(R"({"root": -1, "nodes": []})").empty());
  EXPECT_FALSE(parse_error_text(R"({"root": 1, "nodes": [{"id": 1, "weight": "x"}]})").empty());
  EXPECT_FALSE(parse_error_text(R"({"root": 1, "nodes": [{"id": 1.5}]})").empty());
}

TEST(ParseEt, UnknownFieldsIgnored) {
  const Met m = parse_et(R"({"root": 1, "extra": true, "nodes": [{"id": 1, "label": "a", "note": 3}]})");
  EXPECT_EQ(m.size(), 1u);
}

TEST(SerializeEt, FixturesRoundTrip) {
  for (const char* name : {"figure3_chain.json", "figure4.json", "figure6.json", "figure7.json", "insort.json"}) {
    const Met m = fixture(name);
    const Met back = parse_et(serialize_et(m));
    expect_same(m, back);
    EXPECT_EQ(serialize_et(back), serialize_et(m)) << name;
  }
}

TEST(SerializeEt, DecimalWeightPrintedShortest) {
  const Met m(std::vector<MetNode>{{NodeId{1}, "a", 2.5, {}}}, NodeId{1});
  const std::string text = serialize_et(m);
  EXPECT_NE(text.find("\"weight\": 2.5"), std::string::npos) << text;
  EXPECT_EQ(parse_et(text).node(NodeId{1}).wi, 2.5);
}

TEST(SerializeEt, RandomDecimalWeightsExact) {
  GenParams p;
  p.node_count = 50;
  p.weight_mode = WeightMode::DecimalRange;
  p.seed = 99;
  const Met m = gen_random(p);
  expect_same(m, parse_et(serialize_et(m)));
}

TEST(SerializeEt, RootMarkedWrongPreserved) {
  const Met m = fixture("insort.json");
  ASSERT_TRUE(m.root_wrong());
  EXPECT_TRUE(parse_et(serialize_et(m)).root_wrong());
}

TEST(SaveLoad, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "adq_formats_roundtrip.json";
  const Met m = fixture("figure6.json");
  save_et(m, path.string());
  expect_same(m, load_et(path.string()));
  std::filesystem::remove(path);
  EXPECT_THROW(load_et("/nonexistent/x.json"), format_error);
}

TEST(GenRandom, Deterministic) {
  GenParams p;
  p.node_count = 40;
  p.seed = 7;
  EXPECT_EQ(serialize_et(gen_random(p)), serialize_et(gen_random(p)));
  p.seed = 8;
  GenParams q = p;
  q.seed = 9;
  EXPECT_NE(serialize_et(gen_random(p)), serialize_et(gen_random(q)));
}

TEST(GenRandom, SingleNode) {
  GenParams p;
  p.node_count = 1;
  EXPECT_EQ(gen_random(p).size(), 1u);
}

TEST(GenRandom, DecimalRangeHonored) {
  GenParams p;
  p.node_count = 200;
  p.weight_mode = WeightMode::DecimalRange;
  p.lo = 0.1;
  p.hi = 10.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    p.seed = seed;
    const Met m = gen_random(p);
    EXPECT_EQ(m.size(), 200u);
    for (const auto& [id, n] : m.nodes()) {
      EXPECT_GE(n.wi, 0.1);
      EXPECT_LE(n.wi, 10.0);
    }
  }
}

TEST(GenRandom, MaxChildrenHonored) {
  GenParams p;
  p.node_count = 100;
  p.max_children = 2;
  const Met m = gen_random(p);
  for (const auto& [id, n] : m.nodes()) EXPECT_LE(n.children.size(), 2u);
}

TEST(GenRandom, RejectsBadParams) {
  GenParams p;
  p.node_count = 0;
  EXPECT_THROW(gen_random(p), error);
  p.node_count = 3;
  p.weight_mode = WeightMode::DecimalRange;
  p.lo = -1;
  EXPECT_THROW(gen_random(p), error);
}
