#pragma once

// Argument parsing for the adq executable. run_cli is the whole program
// minus main(), so tests can call it in-process.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adq/commands.hpp"
#include "adq/server.hpp"

namespace adq {

namespace detail {

// Writes to `path`, or to `fallback` when path is empty or "-".
template <typename Fn>
int with_output(const std::string& path, std::ostream& fallback, std::ostream& err, Fn fn) {
  if (path.empty() || path == "-") return fn(fallback);
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << path << '\n';
    return 1;
  }
  return fn(file);
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::istream& in = std::cin, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Divide & Query question selection for algorithmic debugging", "adq"};
  app.require_subcommand(1);

  // debug
  auto* debug = app.add_subcommand("debug", "Debug an execution tree interactively or from a script");
  std::string debug_file;
  std::string debug_strategy = "dqo-general";
  std::optional<std::string> debug_script;
  debug->add_option("file", debug_file, "ET document (JSON)")->required();
  debug->add_option("--strategy,-s", debug_strategy, "Selection strategy")->capture_default_str();
  debug->add_option("--script", debug_script, "Comma-separated answers, e.g. YES,NO,YES");

  // check
  auto* check = app.add_subcommand("check", "Print the optimal set, each strategy's pick and theorem checks");
  std::string check_file;
  check->add_option("file", check_file, "ET document (JSON)")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Average questions per strategy over every buggy-node scenario");
  std::vector<std::string> bench_paths;
  std::string bench_strategies = "dqo,dqh,dqs,hf,td,ss";
  std::string bench_out;
  bool include_nobug = true;
  std::size_t bench_random = 0;
  std::size_t bench_nodes = 50;
  std::uint64_t bench_seed = 1;
  bench->add_option("paths", bench_paths, "ET files or directories of *.json");
  bench->add_option("--strategies", bench_strategies, "Comma-separated strategy ids")->capture_default_str();
  bench->add_option("--out,-o", bench_out, "CSV output file (default stdout)");
  bench->add_flag("--include-nobug,!--no-include-nobug", include_nobug, "Count the no-bug scenario")
      ->capture_default_str();
  bench->add_option("--random", bench_random, "Also bench this many generated uniform trees");
  bench->add_option("--nodes", bench_nodes, "Node count of generated trees")->capture_default_str();
  bench->add_option("--seed", bench_seed, "First seed for generated trees")->envname("ADQ_SEED");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random execution tree");
  GenParams params;
  std::string weights = "uniform";
  std::string gen_out;
  gen->add_option("--nodes,-n", params.node_count, "Node count")->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--seed", params.seed, "Random seed")->envname("ADQ_SEED")->capture_default_str();
  gen->add_option("--max-children", params.max_children, "Children per node, 0 for no limit")->capture_default_str();
  gen->add_option("--weights", weights, "uniform or decimal")
      ->check(CLI::IsMember({"uniform", "decimal"}))
      ->capture_default_str();
  gen->add_option("--lo", params.lo, "Lower bound of decimal weights")->capture_default_str();
  gen->add_option("--hi", params.hi, "Upper bound of decimal weights")->capture_default_str();
  gen->add_option("--zero-prob", params.zero_probability, "Chance of a zero weight (decimal only)");
  gen->add_flag("--root-wrong", params.root_marked_wrong, "Mark the root Wrong");
  gen->add_option("--name", params.name, "Tree name");
  gen->add_option("--out,-o", gen_out, "Output file (default stdout)");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the JSON session service");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  long idle_timeout = 3600;
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port,-p", port)->capture_default_str();
  serve->add_option("--static-dir", static_dir, "Directory served at /");
  serve->add_option("--idle-timeout", idle_timeout, "Seconds before an idle session is dropped")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*debug) {
      const Met met = load_et(debug_file);
      std::optional<std::vector<Answer>> script;
      if (debug_script) script = parse_script(*debug_script);
      return cmd_debug(met, parse_strategy(debug_strategy), script, in, out, err);
    }
    if (*check) return cmd_check(load_et(check_file), out, err);
    if (*bench) {
      std::vector<Met> corpus;
      for (const auto& path : expand_inputs(bench_paths)) corpus.push_back(load_et(path));
      for (std::size_t i = 0; i < bench_random; ++i) {
        GenParams p;
        p.node_count = bench_nodes;
        p.seed = bench_seed + i;
        corpus.push_back(gen_random(p));
      }
      if (corpus.empty()) {
        err << "error: nothing to bench (give ET paths or --random N)\n";
        return 1;
      }
      const auto strategies = parse_strategy_list(bench_strategies);
      return detail::with_output(bench_out, out, err, [&](std::ostream& os) {
        return cmd_bench(corpus, strategies, include_nobug, os, err);
      });
    }
    if (*gen) {
      params.weight_mode = weights == "decimal" ? WeightMode::DecimalRange : WeightMode::Uniform;
      return detail::with_output(gen_out, out, err, [&](std::ostream& os) { return cmd_gen(params, os); });
    }
    if (*serve) {
      SessionService service{std::chrono::seconds(idle_timeout)};
      httplib::Server server;
      mount(server, service, static_dir);
      out << "serving on http://" << host << ':' << port << std::endl;
      if (!server.listen(host, port)) {
        err << "error: cannot listen on " << host << ':' << port << '\n';
        return 1;
      }
      return 0;
    }
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace adq
