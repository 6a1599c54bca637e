#include "tabprot/detection.hpp"
#include "tabprot/graph.hpp"
#include "tabprot/npgen.hpp"
#include "tabprot/oracle.hpp"
#include "tabprot/suppress.hpp"
#include "tabprot/table.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace tabprot;

constexpr int kExitProtected = 0;
constexpr int kExitNotProtected = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInputError = 3;

struct OutputSink {
  std::string out_file;
  bool quiet = false;

  void emit(const nlohmann::json& payload) const {
    std::string text = payload.dump(1) + "\n";
    if (!out_file.empty()) {
      std::ofstream f(out_file);
      if (!f) throw std::runtime_error("cannot write " + out_file);
      f << text;
    }
    if (!quiet && out_file.empty()) std::cout << text;
  }
};

std::string slurp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Table load_table(const std::string& path) { return parse_table_text(slurp_file(path)); }

CellRef resolve_cell(const Table& t, const std::string& row, const std::string& col) {
  int r = t.find_row(row);
  int c = t.find_col(col);
  if (r < 0 || c < 0) throw std::runtime_error("unknown cell " + row + ":" + col);
  return {r, c};
}

// "all", a comma list of row:col labels, or a *.json file holding an array
// of {"row":...,"col":...} objects.
std::vector<CellRef> parse_cells(const Table& t, const std::string& spec) {
  std::vector<CellRef> cells;
  if (spec == "all") return t.suppressed_cells();
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    nlohmann::json doc = nlohmann::json::parse(slurp_file(spec));
    for (const auto& e : doc)
      cells.push_back(resolve_cell(t, e.at("row").get<std::string>(),
                                   e.at("col").get<std::string>()));
    return cells;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("cell spec must be row:col, got '" + item + "'");
    cells.push_back(resolve_cell(t, item.substr(0, colon), item.substr(colon + 1)));
  }
  return cells;
}

SolveMode parse_mode(const std::string& mode) {
  if (mode == "paper") return SolveMode::paper;
  if (mode == "exact") return SolveMode::exact;
  throw std::runtime_error("mode must be paper or exact");
}

nlohmann::json cells_json(const MixedGraph& g, const std::vector<CellRef>& cells) {
  nlohmann::json arr = nlohmann::json::array();
  for (CellRef ref : cells)
    arr.push_back({{"row", g.row_labels[ref.row]}, {"col", g.col_labels[ref.col]}});
  return arr;
}

int cmd_validate(const std::string& table_file, const OutputSink& sink) {
  Table t = load_table(table_file);
  ValidationReport rep = validate(t);
  sink.emit({{"ok", rep.ok()}, {"problems", rep.problems}});
  return rep.ok() ? kExitProtected : kExitNotProtected;
}

int cmd_analyze(const std::string& table_file, const OutputSink& sink) {
  Table t = load_table(table_file);
  MixedGraph g = suppressed_graph(t);

  auto groups_json = [&g](const Partition& p) {
    std::vector<std::vector<std::string>> groups(group_count(p));
    for (int v = 0; v < g.n_vertices(); ++v) groups[p[v]].push_back(g.vertex_label(v));
    return nlohmann::json(groups);
  };

  nlohmann::json out;
  out["components"] = groups_json(connected_components(g));
  out["sccs"] = groups_json(strongly_connected_components(g));
  out["invariant_cells"] = cells_json(g, invariant_cells(t));
  out["suppressed_graph"] = dump_edges(g);
  sink.emit(out);
  return kExitProtected;
}

int cmd_test_protection(const std::string& table_file, const std::string& cells,
                        const OutputSink& sink) {
  Table t = load_table(table_file);
  ProtectionReport rep = test_total_protection(t, parse_cells(t, cells));
  sink.emit(report_to_json(rep, suppressed_graph(t)));
  return rep.totally_protected ? kExitProtected : kExitNotProtected;
}

int cmd_protect(const std::string& table_file, const std::string& cells,
                const std::string& mode, const OutputSink& sink) {
  Table t = load_table(table_file);
  PlanOutcome out = optimal_protection_set(t, parse_cells(t, cells), parse_mode(mode));
  if (!out.plan) {
    sink.emit({{"infeasible", true}, {"reason", out.infeasible_reason}});
    return kExitInfeasible;
  }
  sink.emit(plan_to_json(*out.plan, suppressed_graph(t)));
  return kExitProtected;
}

int cmd_reduce_hitting_set(const std::string& hs_file, const OutputSink& sink) {
  HittingSetInstance hs =
      hitting_set_from_json(nlohmann::json::parse(slurp_file(hs_file)));
  sink.emit(graph_instance_to_json(reduce_hitting_set(hs)));
  return kExitProtected;
}

int cmd_oracle(const std::string& table_file, const std::string& cells,
               const OutputSink& sink) {
  Table t = load_table(table_file);
  auto plan = brute_force_min_protection(t, parse_cells(t, cells));
  if (!plan) {
    sink.emit({{"infeasible", true},
               {"reason", "no subset of published cells protects q"}});
    return kExitInfeasible;
  }
  sink.emit(plan_to_json(*plan, suppressed_graph(t)));
  return kExitProtected;
}

int cmd_bench(const std::string& sizes, const std::string& op, uint64_t seed,
              int threads, bool quiet) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
  std::vector<int> ns;
  std::stringstream ss(sizes);
  std::string item;
  while (std::getline(ss, item, ',')) ns.push_back(std::stoi(item));

  if (!quiet) std::cout << "size,m,n,milliseconds\n";
  for (int n : ns) {
    int side = n / 2;
    int m = 2 * n;
    MixedGraph g = generate_suppressed_graph(side, n - side, m, seed);

    std::vector<CellRef> q;
    if (op == "test-protection") {
      // q spares a spanning forest, so the verdict is protected and the
      // linear test path is what gets timed.
      DisjointSets ds(g.n_vertices());
      for (const GraphEdge& e : g.edges)
        if (!ds.unite(g.row_vertex(e.row), g.col_vertex(e.col))) q.push_back(e.cell);
    } else {
      std::mt19937_64 rng(seed + 1);
      for (const GraphEdge& e : g.edges)
        if (rng() & 1) q.push_back(e.cell);
    }

    auto t0 = std::chrono::steady_clock::now();
    if (op == "test-protection") {
      ProtectionReport rep = test_total_protection(g, q);
      (void)rep;
    } else {
      PlanOutcome out = optimal_protection_set(g, q, SolveMode::paper);
      (void)out;
    }
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    std::cout << n << "," << m << "," << g.n_vertices() << "," << ms << "\n";
  }
  return kExitProtected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"total-protection analysis for two-dimensional tables"};
  app.require_subcommand(1);

  std::string table_file, cells = "all", mode = "exact", hs_file;
  std::string sizes = "10000,20000,40000", bench_op = "protect";
  uint64_t seed = 1;
  int threads = 0;
  OutputSink sink;

  app.add_option("--out", sink.out_file, "write the JSON payload to FILE");
  app.add_flag("--quiet", sink.quiet, "suppress stdout payload");

  auto* validate_cmd = app.add_subcommand("validate", "check table invariants");
  validate_cmd->add_option("table", table_file)->required();

  auto* analyze_cmd =
      app.add_subcommand("analyze", "components, strong components, invariant cells");
  analyze_cmd->add_option("table", table_file)->required();

  auto* test_cmd = app.add_subcommand("test-protection", "total protection test for q");
  test_cmd->add_option("table", table_file)->required();
  test_cmd->add_option("--cells", cells, "q: 'all', row:col list, or a .json file");

  auto* protect_cmd =
      app.add_subcommand("protect", "minimum additional suppression for q");
  protect_cmd->add_option("table", table_file)->required();
  protect_cmd->add_option("--cells", cells, "q: 'all', row:col list, or a .json file");
  protect_cmd->add_option("--mode", mode, "paper or exact (default exact)");

  auto* reduce_cmd =
      app.add_subcommand("reduce-hitting-set", "hitting set to graph instance");
  reduce_cmd->add_option("instance", hs_file)->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force minimum for q");
  oracle_cmd->add_option("table", table_file)->required();
  oracle_cmd->add_option("--cells", cells, "q: 'all', row:col list, or a .json file");

  auto* bench_cmd = app.add_subcommand("bench", "timing CSV over generated instances");
  bench_cmd->add_option("--sizes", sizes, "comma list of n = rows+columns");
  bench_cmd->add_option("--seed", seed, "generator seed");
  bench_cmd->add_option("--threads", threads, "worker pool size (0 = default)");
  bench_cmd->add_option("--op", bench_op, "protect or test-protection");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints the help text
  } catch (const CLI::ParseError& e) {
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
    return kExitInputError;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(table_file, sink);
    if (analyze_cmd->parsed()) return cmd_analyze(table_file, sink);
    if (test_cmd->parsed()) return cmd_test_protection(table_file, cells, sink);
    if (protect_cmd->parsed()) return cmd_protect(table_file, cells, mode, sink);
    if (reduce_cmd->parsed()) return cmd_reduce_hitting_set(hs_file, sink);
    if (oracle_cmd->parsed()) return cmd_oracle(table_file, cells, sink);
    if (bench_cmd->parsed()) return cmd_bench(sizes, bench_op, seed, threads, sink.quiet);
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
