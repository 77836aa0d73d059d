#pragma once

// Strategy comparison: every tree in a corpus is debugged once per scenario
// (each search-area node planted as the bug, plus the no-bug run) with each
// strategy, and the question counts are averaged exactly.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "adq/analysis.hpp"
#include "adq/met.hpp"
#include "adq/strategies.hpp"

namespace adq {

struct BenchRow {
  std::string benchmark;
  std::size_t nodes = 0;
  StrategyId strategy{};
  std::int64_t scenarios = 0;
  Rational avg_questions;

  Rational avg_pct() const { return avg_questions * 100 / static_cast<long long>(nodes); }
};

struct BenchSkip {
  std::string benchmark;
  StrategyId strategy{};
  std::string reason;
};

struct BenchResult {
  std::vector<BenchRow> rows;    // corpus order, then strategy order
  std::vector<BenchSkip> skips;  // strategy not applicable to the tree's weight class
};

struct BenchOptions {
  bool include_nobug = true;
  bool parallel = true;
};

inline BenchResult run_bench(const std::vector<Met>& corpus, const std::vector<StrategyId>& strategies,
                             const BenchOptions& opts = {}) {
  if (corpus.empty()) throw error("bench corpus is empty");
  if (strategies.empty()) throw error("no strategies to bench");

  struct Cell {
    std::optional<BenchRow> row;
    std::optional<BenchSkip> skip;
  };
  const auto run_cell = [&](const Met& met, StrategyId s) {
    Cell cell;
    if (sea_empty(met)) throw precondition_error(met.name() + ": search area is empty");
    try {
      check_applicable(met, s);
    } catch (const precondition_error& e) {
      cell.skip = BenchSkip{met.name(), s, e.what()};
      return cell;
    }
    const ExpectedCost cost = expected_questions(met, s, std::nullopt, opts.include_nobug);
    cell.row = BenchRow{met.name(), met.size(), s, cost.scenarios, cost.value()};
    return cell;
  };

  // Cells are written by index, so output order does not depend on scheduling.
  const std::size_t n_cells = corpus.size() * strategies.size();
  std::vector<Cell> cells(n_cells);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto worker = [&] {
    for (std::size_t i = next++; i < n_cells; i = next++) {
      try {
        cells[i] = run_cell(corpus[i / strategies.size()], strategies[i % strategies.size()]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_threads =
      opts.parallel ? std::min<std::size_t>(n_cells, std::max(1u, std::thread::hardware_concurrency())) : 1;
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < n_threads; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);

  BenchResult out;
  for (auto& c : cells) {
    if (c.row) out.rows.push_back(std::move(*c.row));
    if (c.skip) out.skips.push_back(std::move(*c.skip));
  }
  return out;
}

/// Mean of the per-tree averages for one strategy; zero when it has no rows.
inline Rational corpus_mean(const std::vector<BenchRow>& rows, StrategyId s) {
  Rational sum = 0;
  long long count = 0;
  for (const auto& r : rows) {
    if (r.strategy != s) continue;
    sum += r.avg_questions;
    ++count;
  }
  return count == 0 ? Rational(0) : sum / count;
}

/// Rounds half away from zero to two decimals.
inline std::string format_decimal2(const Rational& v) {
  using boost::multiprecision::cpp_int;
  const cpp_int num = boost::multiprecision::numerator(v);
  const cpp_int den = boost::multiprecision::denominator(v);
  const bool negative = num < 0;
  const cpp_int mag = negative ? cpp_int(-num) : num;
  const cpp_int hundredths = (mag * 200 + den) / (den * 2);
  const cpp_int whole = hundredths / 100;
  const cpp_int frac = hundredths % 100;
  std::ostringstream os;
  if (negative && hundredths != 0) os << '-';
  os << whole << '.' << (frac < 10 ? "0" : "") << frac;
  return os.str();
}

inline std::string format_exact(const Rational& v) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(v) << '/' << boost::multiprecision::denominator(v);
  return os.str();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "benchmark,nodes,strategy,scenarios,avg_questions,avg_pct,avg_exact\n";
  for (const auto& r : rows) {
    os << csv_field(r.benchmark) << ',' << r.nodes << ',' << to_string(r.strategy) << ',' << r.scenarios << ','
       << format_decimal2(r.avg_questions) << ',' << format_decimal2(r.avg_pct()) << ','
       << format_exact(r.avg_questions) << '\n';
  }
}

}  // namespace adq
