#pragma once

// Command implementations behind the adq executable. Each takes its streams
// explicitly so tests can drive them without a process.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "adq/analysis.hpp"
#include "adq/bench.hpp"
#include "adq/formats.hpp"
#include "adq/generate.hpp"
#include "adq/met.hpp"
#include "adq/session.hpp"
#include "adq/strategies.hpp"

namespace adq {

namespace detail {

inline std::string trim_lower(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

/// YES/NO, case-insensitive, plus y/n. YES means the node's result is correct.
inline std::optional<Answer> parse_answer(const std::string& text) {
  const std::string t = detail::trim_lower(text);
  if (t == "yes" || t == "y") return Answer::Correct;
  if (t == "no" || t == "n") return Answer::Wrong;
  return std::nullopt;
}

inline std::vector<Answer> parse_script(const std::string& text) {
  std::vector<Answer> out;
  if (detail::trim_lower(text).empty()) return out;
  for (const std::string& tok : detail::split(text, ',')) {
    auto a = parse_answer(tok);
    if (!a) throw error("bad answer '" + tok + "' in script (expected YES or NO)");
    out.push_back(*a);
  }
  return out;
}

inline const char* yes_no(Answer a) { return a == Answer::Correct ? "YES" : "NO"; }

/// Interactive or scripted session in the terminal. Returns the exit status.
inline int cmd_debug(const Met& met, StrategyId strategy, const std::optional<std::vector<Answer>>& script,
                     std::istream& in, std::ostream& out, std::ostream& err) {
  SessionState s;
  try {
    s = start_session(met, strategy);
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  out << "Starting Debugging Session...\n";
  std::size_t next_scripted = 0;
  while (!s.finished()) {
    const std::string& label = s.met().node(*s.pending()).label;
    const std::string prompt = "(" + std::to_string(s.transcript().size() + 1) + ") " + label + "? ";
    Answer a;
    if (script) {
      if (next_scripted >= script->size()) {
        out << prompt << '\n';
        err << "error: answer script exhausted at question " << s.transcript().size() + 1 << '\n';
        return 1;
      }
      a = (*script)[next_scripted++];
      out << prompt << yes_no(a) << '\n';
    } else {
      std::optional<Answer> parsed;
      while (!parsed) {
        out << prompt << std::flush;
        std::string line;
        if (!std::getline(in, line)) {
          out << '\n';
          err << "error: input ended before the session finished\n";
          return 1;
        }
        parsed = parse_answer(line);
        if (!parsed) out << "Please answer YES or NO.\n";
      }
      a = *parsed;
    }
    s = step_session(std::move(s), a);
  }
  const SessionReport r = s.report();
  out << '\n';
  if (r.buggy) {
    out << "Bug found in node: " << r.buggy_label << '\n';
  } else {
    out << "No bug has been found\n";
  }
  return 0;
}

namespace detail {

inline std::string id_list(const std::vector<NodeId>& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + to_string(ids[i]);
  return s + "}";
}

inline std::string describe(const Met& met, NodeId id) {
  const std::string& label = met.node(id).label;
  return label.empty() ? "node " + to_string(id) : "node " + to_string(id) + " (" + label + ")";
}

}  // namespace detail

/// Optimal set, every strategy's pick and the theorem report. Exit 1 on violations.
inline int cmd_check(const Met& met, std::ostream& out, std::ostream& err) {
  if (sea_empty(met)) {
    err << "error: search area is empty\n";
    return 1;
  }
  out << "tree: " << met.name() << " (" << met.size() << " nodes, " << sea(met).size() << " undefined, "
      << (is_uniform(met) ? "uniform" : "variable") << " weights)\n";
  out << "total weight: " << MetMetrics(met).total() << '\n';
  const auto opt = optimal_set(met);
  out << "optimal set: " << detail::id_list(opt) << '\n';
  for (NodeId id : opt) {
    const UpDown ud = up_down(met, id);
    out << "  " << detail::describe(met, id) << " up=" << ud.up << " down=" << ud.down << '\n';
  }
  out << "selections:\n";
  for (StrategyId s : all_strategies) {
    out << "  " << to_string(s) << ": ";
    try {
      const Selection sel = select(met, s);
      out << detail::describe(met, sel.chosen);
      if (!sel.alternatives.empty()) out << " set " << detail::id_list(sel.alternatives);
      if (std::binary_search(opt.begin(), opt.end(), sel.chosen)) out << " [optimal]";
      out << '\n';
    } catch (const precondition_error& e) {
      out << "not applicable (" << e.what() << ")\n";
    }
  }
  const TheoremReport report = check_theorems(met);
  out << "theorem checks: " << report.checks << " evaluated, " << report.violations.size() << " violations\n";
  if (!report.skipped.empty()) {
    out << "skipped (uniform weights only):";
    for (const auto& p : report.skipped) out << ' ' << p;
    out << '\n';
  }
  for (const auto& v : report.violations) out << "  VIOLATION " << v.predicate << ": " << v.detail << '\n';
  return report.ok() ? 0 : 1;
}

/// Expands directories to their *.json files in name order.
inline std::vector<std::string> expand_inputs(const std::vector<std::string>& paths) {
  namespace fs = std::filesystem;
  std::vector<std::string> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> files;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
      }
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

inline std::vector<StrategyId> parse_strategy_list(const std::string& text) {
  std::vector<StrategyId> out;
  for (const std::string& tok : detail::split(text, ',')) out.push_back(parse_strategy(detail::trim_lower(tok)));
  return out;
}

/// Writes the CSV to `out`; skipped (tree, strategy) pairs go to `err`.
inline int cmd_bench(const std::vector<Met>& corpus, const std::vector<StrategyId>& strategies, bool include_nobug,
                     std::ostream& out, std::ostream& err) {
  BenchResult result;
  try {
    result = run_bench(corpus, strategies, {.include_nobug = include_nobug});
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  write_csv(out, result.rows);
  for (const auto& s : result.skips) {
    err << "skipped " << s.benchmark << " / " << to_string(s.strategy) << ": " << s.reason << '\n';
  }
  return 0;
}

inline int cmd_gen(const GenParams& params, std::ostream& out) {
  out << serialize_et(gen_random(params));
  return 0;
}

}  // namespace adq
