// bracketeer: graph bracket polynomials, looped interlacement graphs of
// (virtual) knots, and the graph Reidemeister move calculus.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bracketeer/bracket.hpp"
#include "bracketeer/census.hpp"
#include "bracketeer/errors.hpp"
#include "bracketeer/gauss.hpp"
#include "bracketeer/graph.hpp"
#include "bracketeer/moves.hpp"
#include "bracketeer/poly.hpp"
#include "bracketeer/selftest.hpp"

namespace {

using namespace bracketeer;

struct CliConfig {
  int state_sum_cap = 20;
  std::size_t memo_cap = std::size_t{1} << 20;
  std::string engine = "auto";
  bool records = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct LoadedGraph {
  LoopedGraph graph;
  std::string id;
};

LoadedGraph load_graph(const std::string& input, const std::string& gauss_arg,
                       const std::string& gauss_file) {
  if (!gauss_arg.empty()) return {interlacement_graph(parse_gauss(gauss_arg)), gauss_arg};
  if (!gauss_file.empty())
    return {interlacement_graph(parse_gauss(read_input(gauss_file))), gauss_file};
  return {parse_graph(read_input(input)), input == "-" ? "stdin" : input};
}

MultiPoly compute_bracket(const LoopedGraph& g, const CliConfig& cfg) {
  if (cfg.engine == "state-sum") return state_sum_bracket(g, cfg.state_sum_cap);
  if (cfg.engine == "recursive") {
    RecursiveBracket engine(cfg.memo_cap);
    return engine(g);
  }
  if (cfg.engine == "both-and-compare") {
    MultiPoly sum = state_sum_bracket(g, cfg.state_sum_cap);
    RecursiveBracket engine(cfg.memo_cap);
    if (MultiPoly rec = engine(g); rec != sum)
      throw invariant_error("engine disagreement: state sum and recursion differ");
    return sum;
  }
  if (g.n() <= std::min(cfg.state_sum_cap, 14)) return state_sum_bracket(g, cfg.state_sum_cap);
  RecursiveBracket engine(cfg.memo_cap);
  return engine(g);
}

void emit(const CliConfig& cfg, const std::string& id, const std::string& name,
          const std::string& value) {
  if (cfg.records)
    std::cout << id << '\t' << name << '\t' << value << '\n';
  else
    std::cout << value << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bracketeer: exact graph bracket polynomials, knot invariants via looped\n"
      "interlacement graphs, and the graph Reidemeister move calculus.\n"
      "BRACKETEER_THREADS caps worker threads; output is identical for any setting."};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string input = "-", input2, gauss_arg, gauss_file, move_text, out_file;
  int census_n = 5, insert_budget = 2, max_vertices = -1;
  std::uint64_t max_expansions = 100000;
  std::string census_kind = "looped", census_variant = "full";

  auto add_graph_options = [&](CLI::App* cmd, bool with_engine) {
    cmd->add_option("input", input, "graph file in lg format, or - for stdin");
    cmd->add_option("--gauss", gauss_arg, "signed Gauss code given inline");
    cmd->add_option("--gauss-file", gauss_file, "signed Gauss code read from a file");
    cmd->add_flag("--records", cfg.records, "machine-readable: id<TAB>name<TAB>polynomial");
    if (with_engine) {
      cmd->add_option("--engine", cfg.engine, "auto | state-sum | recursive | both-and-compare")
          ->check(CLI::IsMember({"auto", "state-sum", "recursive", "both-and-compare"}));
      cmd->add_option("--state-sum-cap", cfg.state_sum_cap, "largest n the state sum accepts")
          ->check(CLI::Range(0, 30));
      cmd->add_option("--memo-cap", cfg.memo_cap, "recursion memo entries before eviction")
          ->check(CLI::PositiveNumber);
    }
  };

  CLI::App* bracket_cmd = app.add_subcommand("bracket", "graph bracket polynomial [G](A,B,d)");
  add_graph_options(bracket_cmd, true);
  CLI::App* reduced_cmd = app.add_subcommand("reduced", "reduced bracket <G>(A)");
  add_graph_options(reduced_cmd, true);
  CLI::App* jones_cmd = app.add_subcommand("jones", "graph Jones polynomial V_G(t)");
  add_graph_options(jones_cmd, true);

  CLI::App* gauss_cmd = app.add_subcommand("gauss", "full report for a signed Gauss code");
  gauss_cmd->add_option("code", gauss_arg, "signed Gauss code, e.g. \"a+ b+ c+ a+ b+ c+\"");
  gauss_cmd->add_option("--file", gauss_file, "read the code from a file");
  gauss_cmd->add_flag("--records", cfg.records, "machine-readable output");

  CLI::App* moves_cmd = app.add_subcommand("moves", "Reidemeister moves on a graph");
  CLI::App* enum_cmd = moves_cmd->add_subcommand("enumerate", "list the legal moves");
  enum_cmd->add_option("input", input, "graph file, or - for stdin");
  enum_cmd->add_option("--insert-budget", insert_budget, "vertices insertions may add")
      ->check(CLI::Range(0, 64));
  CLI::App* apply_cmd = moves_cmd->add_subcommand("apply", "apply one move descriptor");
  apply_cmd->add_option("input", input, "graph file, or - for stdin");
  apply_cmd->add_option("move", move_text, "descriptor, e.g. \"O3 0 1 2\"")->required();
  moves_cmd->require_subcommand(1);

  CLI::App* equiv_cmd = app.add_subcommand("equiv", "bounded Reidemeister equivalence search");
  equiv_cmd->add_option("input1", input, "first graph file")->required();
  equiv_cmd->add_option("input2", input2, "second graph file")->required();
  equiv_cmd->add_option("--max-vertices", max_vertices,
                        "largest intermediate graph (default max(n1,n2)+4)");
  equiv_cmd->add_option("--max-expansions", max_expansions, "node expansion budget");

  CLI::App* census_cmd = app.add_subcommand("census", "isomorphism classes and their brackets");
  census_cmd->add_option("--n", census_n, "vertex count")->required()->check(CLI::Range(0, 7));
  census_cmd->add_option("--kind", census_kind, "looped | simple | tree")
      ->check(CLI::IsMember({"looped", "simple", "tree"}));
  census_cmd->add_option("--variant", census_variant, "full | one-var")
      ->check(CLI::IsMember({"full", "one-var"}));
  census_cmd->add_option("--out", out_file, "write (or verify) the census TSV here");

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the release property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (*bracket_cmd) {
      LoadedGraph in = load_graph(input, gauss_arg, gauss_file);
      emit(cfg, in.id, "bracket", compute_bracket(in.graph, cfg).to_string());
    } else if (*reduced_cmd) {
      LoadedGraph in = load_graph(input, gauss_arg, gauss_file);
      emit(cfg, in.id, "reduced", reduce_single(compute_bracket(in.graph, cfg)).to_string());
    } else if (*jones_cmd) {
      LoadedGraph in = load_graph(input, gauss_arg, gauss_file);
      MultiPoly bracket = compute_bracket(in.graph, cfg);
      QuarterPoly v =
          to_jones(reduce_single(bracket), in.graph.n(), in.graph.loop_count());
      emit(cfg, in.id, "jones", v.to_string());
    } else if (*gauss_cmd) {
      if (gauss_arg.empty() && gauss_file.empty())
        throw input_error("gauss: give a code argument or --file");
      std::string id = gauss_arg.empty() ? gauss_file : gauss_arg;
      GaussCode code = parse_gauss(gauss_arg.empty() ? read_input(gauss_file) : gauss_arg);
      KnotInvariants inv = knot_invariants(code);
      if (cfg.records) {
        emit(cfg, id, "bracket", inv.bracket.to_string());
        emit(cfg, id, "reduced", inv.reduced.to_string());
        emit(cfg, id, "jones", inv.jones.to_string());
      } else {
        std::cout << "crossings: " << code.crossings();
        for (const std::string& label : code.labels) std::cout << ' ' << label;
        std::cout << "\nwrithe: " << inv.writhe << '\n';
        std::cout << "interlacement graph:\n" << print_graph(inv.graph);
        std::cout << "eulerian: " << (eulerian_check(inv.graph) ? "yes" : "no") << '\n';
        std::cout << "bracket: " << inv.bracket.to_string() << '\n';
        std::cout << "reduced: " << inv.reduced.to_string() << '\n';
        std::cout << "jones: " << inv.jones.to_string() << '\n';
      }
    } else if (*moves_cmd) {
      LoopedGraph g = parse_graph(read_input(input));
      if (*enum_cmd) {
        for (const auto& [m, h] : enumerate_moves(g, insert_budget))
          std::cout << m.to_string() << '\n';
      } else {
        std::cout << print_graph(apply_move(g, MoveDescriptor::parse(move_text)));
      }
    } else if (*equiv_cmd) {
      LoopedGraph g1 = parse_graph(read_input(input));
      LoopedGraph g2 = parse_graph(read_input(input2));
      int cap = max_vertices > 0 ? max_vertices : std::max(g1.n(), g2.n()) + 4;
      SearchResult r = equivalence_search(g1, g2, cap, max_expansions);
      if (r.found) {
        std::cout << "path found: " << r.path.size() << " moves\n";
        for (const auto& m : r.path) std::cout << m.to_string() << '\n';
      } else {
        std::cout << "no path within bounds (expanded " << r.expansions << " nodes)\n";
      }
    } else if (*census_cmd) {
      if (census_kind == "tree") {
        for (const auto& row : tree_census(census_n))
          std::cout << "n=" << row.n << "\ttrees=" << row.trees << "\tbrackets_distinct="
                    << (row.brackets_distinct ? "yes" : "no") << "\tpairs=" << row.pairs
                    << "\tjones_separated=" << row.jones_separated_pairs << '\n';
      } else {
        CensusKind kind = census_kind == "looped" ? CensusKind::looped : CensusKind::simple;
        CensusVariant variant =
            census_variant == "full" ? CensusVariant::full : CensusVariant::one_variable;
        CensusResult census = bracket_census(census_n, kind, variant);
        std::cout << "classes: " << census.classes << "\ndistinct: " << census.distinct
                  << "\ncollision groups: " << census.collisions.size() << '\n';
        if (!out_file.empty()) {
          write_or_verify_census(out_file, census_tsv(census));
          std::cout << "census written/verified: " << out_file << '\n';
        }
      }
    } else if (*selftest_cmd) {
      bool all = true;
      for (const auto& outcome : selftest::run_selftest()) {
        std::printf("[%s] %s — %s (%.2fs)\n", outcome.pass ? "PASS" : "FAIL",
                    outcome.name.c_str(), outcome.detail.c_str(), outcome.seconds);
        all = all && outcome.pass;
      }
      if (!all) {
        std::cerr << "selftest: failures detected\n";
        return 2;
      }
      std::cout << "selftest: all suites passed\n";
    }
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const invariant_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
