#pragma once

// Test-only reference computations. Reads a Met through its node list only and
// recomputes everything by plain set enumeration, sharing no code with the
// library's metrics or strategies.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "adq/met.hpp"

namespace ref {

struct Tree {
  std::map<std::uint64_t, std::vector<std::uint64_t>> children;
  std::map<std::uint64_t, double> wi;
  std::uint64_t root = 0;
  bool root_wrong = false;

  explicit Tree(const adq::Met& met) {
    for (const auto& [id, n] : met.nodes()) {
      wi[id.value] = n.wi;
      for (auto c : n.children) children[id.value].push_back(c.value);
      children[id.value];
    }
    root = met.root().value;
    root_wrong = met.root_wrong();
  }

  bool undefined(std::uint64_t n) const { return !(n == root && root_wrong); }

  std::set<std::uint64_t> below(std::uint64_t n) const {
    std::set<std::uint64_t> out;
    std::vector<std::uint64_t> todo = children.at(n);
    while (!todo.empty()) {
      auto x = todo.back();
      todo.pop_back();
      out.insert(x);
      for (auto c : children.at(x)) todo.push_back(c);
    }
    return out;
  }

  std::vector<std::uint64_t> sea() const {
    std::vector<std::uint64_t> out;
    for (const auto& [id, w] : wi) {
      if (undefined(id)) out.push_back(id);
    }
    return out;
  }

  double up(std::uint64_t n) const {
    const auto b = below(n);
    double s = 0;
    for (auto m : sea()) {
      if (m != n && !b.contains(m)) s += wi.at(m);
    }
    return s;
  }

  double down(std::uint64_t n) const {
    double s = 0;
    for (auto m : below(n)) s += wi.at(m);
    return s;
  }

  double gap(std::uint64_t n) const { return std::fabs(down(n) - up(n)); }

  double min_gap() const {
    double best = INFINITY;
    for (auto n : sea()) best = std::min(best, gap(n));
    return best;
  }

  // Nodes whose gap is within a relative 1e-9 of the minimum.
  std::vector<std::uint64_t> optimal() const {
    const double best = min_gap();
    std::vector<std::uint64_t> out;
    for (auto n : sea()) {
      if (std::fabs(gap(n) - best) <= 1e-9 * std::max({1.0, gap(n), best})) out.push_back(n);
    }
    return out;
  }

  bool is_optimal(std::uint64_t n) const {
    const auto o = optimal();
    return std::find(o.begin(), o.end(), n) != o.end();
  }
};

}  // namespace ref
