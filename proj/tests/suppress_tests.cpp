#include "tabprot/suppress.hpp"

#include "tabprot/oracle.hpp"
#include "ref_oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace tabprot;
using namespace tabprot::testing;

namespace {

// Builds a contracted instance directly from component descriptions; each
// entry lists the classes of the supers in one component. Fabricated
// members keep lift-free solver tests simple.
SemiTripartiteInstance make_instance(const std::vector<std::vector<SuperClass>>& comps) {
  SemiTripartiteInstance inst;
  int next_row = 0, next_col = 0;
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    std::vector<int> ids;
    for (SuperClass cls : comps[c]) {
      ContractedGraph::SuperVertex sv;
      if (cls != SuperClass::vb) sv.rows.push_back(next_row++);
      if (cls != SuperClass::va) sv.cols.push_back(next_col++);
      ids.push_back(inst.n_supers());
      inst.supers.push_back(std::move(sv));
      inst.cls.push_back(cls);
      inst.comp_of.push_back(c);
    }
    inst.comps.push_back(std::move(ids));
  }
  inst.n_rows = next_row;
  inst.n_cols = next_col;
  return inst;
}

bool plan_is_forest(const Table& t, const std::vector<CellRef>& cells) {
  DisjointSets ds(t.rows() + t.cols());
  for (CellRef ref : cells)
    if (!ds.unite(ref.row, t.rows() + ref.col)) return false;
  return true;
}

}  // namespace

TEST_CASE("tk22 reduction: hand-run of the pipeline") {
  Table tk = load_fixture("tk22.json");
  std::vector<CellRef> q = tk.suppressed_cells();  // all four
  SemiTripartiteInstance inst = reduce_to_semitripartite(tk, q);

  // No free edges and an empty complement leave the contraction trivial.
  CHECK(inst.complement_cells.empty());
  REQUIRE(inst.n_supers() == 6);
  int va = 0, vb = 0, vab = 0;
  for (SuperClass c : inst.cls) {
    va += c == SuperClass::va;
    vb += c == SuperClass::vb;
    vab += c == SuperClass::vab;
  }
  CHECK(va == 3);
  CHECK(vb == 3);
  CHECK(vab == 0);

  // One four-super component ({R1,R2,Ca,Cb}), two singletons (R3, Cc).
  std::vector<size_t> sizes;
  for (const auto& comp : inst.comps)
    if (!comp.empty()) sizes.push_back(comp.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<size_t>{1, 1, 4});
}

TEST_CASE("q = empty leaves nothing to connect") {
  Table tk = load_fixture("tk22.json");
  SemiTripartiteInstance inst = reduce_to_semitripartite(tk, {});
  for (const auto& comp : inst.comps) CHECK(comp.size() == 1);
  SolveOutcome out = solve_semitripartite(inst, SolveMode::exact);
  REQUIRE(out.solution.has_value());
  CHECK(out.solution->edges.empty());
  PlanOutcome plan = optimal_protection_set(tk, {}, SolveMode::exact);
  REQUIRE(plan.plan.has_value());
  CHECK(plan.plan->cells.empty());
}

TEST_CASE("good-component hand-run: one protected edge in a three-vertex component") {
  // Row 1 with cells (1,a) in q and (1,b) free: K spans {R1,Cb}, the
  // component complement is empty, contraction yields one AB super plus Ca.
  Table t = make_table(1, 2, {1, 1}, {{0, 0}, {0, 1}}, 0, 2);
  SemiTripartiteInstance inst = reduce_to_semitripartite(t, {{0, 0}});
  REQUIRE(inst.n_supers() == 2);
  CHECK(inst.cls[0] == SuperClass::vab);
  CHECK(inst.supers[0].rows == std::vector<int>{0});
  CHECK(inst.supers[0].cols == std::vector<int>{1});
  CHECK(inst.cls[1] == SuperClass::vb);
  CHECK(inst.comp_of[0] == inst.comp_of[1]);

  // Nothing outside the component exists to attach Ca to.
  for (SolveMode mode : {SolveMode::paper, SolveMode::exact}) {
    SolveOutcome out = solve_semitripartite(inst, mode);
    CHECK_FALSE(out.solution.has_value());
    CHECK_FALSE(out.infeasible_reason.empty());
  }
  CHECK_FALSE(brute_force_min_protection(t, {{0, 0}}).has_value());
}

TEST_CASE("paper case 1: bad component anchored on a mixed vertex") {
  SemiTripartiteInstance inst = make_instance({
      {SuperClass::va, SuperClass::vb},  // bad component {a, b}
      {SuperClass::vab},                 // singleton u
  });
  SolveOutcome out = solve_semitripartite(inst, SolveMode::paper);
  REQUIRE(out.solution.has_value());
  CHECK(out.solution->edges == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
  CHECK(out.solution->d == 2);
  CHECK(out.solution->w_bad == 1);
  CHECK(out.solution->w_good == 0);
  CHECK(min_semitripartite_oracle(inst) == 2);
}

TEST_CASE("paper case 3: two goods and one bad give d - floor((wg+wb)/2)") {
  SemiTripartiteInstance inst = make_instance({
      {SuperClass::vab, SuperClass::va},  // good {u1, a1}
      {SuperClass::vab, SuperClass::vb},  // good {u2, b2}
      {SuperClass::va, SuperClass::vb},   // bad {a3, b3}
  });
  SolveOutcome paper = solve_semitripartite(inst, SolveMode::paper);
  REQUIRE(paper.solution.has_value());
  CHECK(paper.solution->edges.size() == 5);  // 6 - floor(3/2)
  CHECK(paper.solution->d == 6);

  SolveOutcome exact = solve_semitripartite(inst, SolveMode::exact);
  REQUIRE(exact.solution.has_value());
  CHECK(exact.solution->edges.size() == 5);
  CHECK(min_semitripartite_oracle(inst) == 5);
}

TEST_CASE("paper case 2 with a bad component spends d-1 edges") {
  SemiTripartiteInstance inst = make_instance({
      {SuperClass::vab, SuperClass::va, SuperClass::vb},  // good, 3 supers
      {SuperClass::va, SuperClass::vb},                   // bad
  });
  SolveOutcome paper = solve_semitripartite(inst, SolveMode::paper);
  REQUIRE(paper.solution.has_value());
  CHECK(paper.solution->edges.size() == 4);  // d - 1 with d = 5
  CHECK(min_semitripartite_oracle(inst) == 4);
  SolveOutcome exact = solve_semitripartite(inst, SolveMode::exact);
  REQUIRE(exact.solution.has_value());
  CHECK(exact.solution->edges.size() == 4);
}

TEST_CASE("paper case 2 without bad components hubs on an external AB vertex") {
  SemiTripartiteInstance inst = make_instance({
      {SuperClass::vab, SuperClass::va},  // good component
      {SuperClass::vab},                  // external singleton
  });
  SolveOutcome paper = solve_semitripartite(inst, SolveMode::paper);
  REQUIRE(paper.solution.has_value());
  CHECK(paper.solution->edges == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
  CHECK(min_semitripartite_oracle(inst) == 2);
}

TEST_CASE("paper case 2, sixteen-subcase corner: both sides populated") {
  SemiTripartiteInstance inst = make_instance({
      {SuperClass::vab, SuperClass::va, SuperClass::vb},  // good with AB inside
      {SuperClass::va},                                   // external row vertex
      {SuperClass::vb},                                   // external column vertex
  });
  SolveOutcome paper = solve_semitripartite(inst, SolveMode::paper);
  REQUIRE(paper.solution.has_value());
  CHECK(paper.solution->edges.size() == 4);  // |D_j| + 1
  CHECK(min_semitripartite_oracle(inst) == 4);
  SolveOutcome exact = solve_semitripartite(inst, SolveMode::exact);
  CHECK(exact.solution->edges.size() == 4);
}

TEST_CASE("three bad components form a mutual tree that case 1 misses") {
  SemiTripartiteInstance inst = make_instance({
      {SuperClass::va, SuperClass::vb},
      {SuperClass::va, SuperClass::vb},
      {SuperClass::va, SuperClass::vb},
  });
  // Two bad components alone can never merge, but three can: paper mode
  // answers infeasible here even though a five-edge tree exists.
  CHECK_FALSE(solve_semitripartite(inst, SolveMode::paper).solution.has_value());
  SolveOutcome exact = solve_semitripartite(inst, SolveMode::exact);
  REQUIRE(exact.solution.has_value());
  CHECK(exact.solution->edges.size() == 5);
  CHECK(min_semitripartite_oracle(inst) == 5);

  // With only two of them the instance is genuinely infeasible either way.
  SemiTripartiteInstance two = make_instance({
      {SuperClass::va, SuperClass::vb},
      {SuperClass::va, SuperClass::vb},
  });
  CHECK_FALSE(solve_semitripartite(two, SolveMode::paper).solution.has_value());
  CHECK_FALSE(solve_semitripartite(two, SolveMode::exact).solution.has_value());
  CHECK_FALSE(min_semitripartite_oracle(two).has_value());
}

TEST_CASE("tk22: paper mode declares infeasible, exact mode finds five cells") {
  Table tk = load_fixture("tk22.json");
  std::vector<CellRef> q = tk.suppressed_cells();
  SemiTripartiteInstance inst = reduce_to_semitripartite(tk, q);

  SolveOutcome paper = solve_semitripartite(inst, SolveMode::paper);
  CHECK_FALSE(paper.solution.has_value());

  SolveOutcome exact = solve_semitripartite(inst, SolveMode::exact);
  REQUIRE(exact.solution.has_value());
  CHECK(exact.solution->edges.size() == 5);
  CHECK(min_semitripartite_oracle(inst) == 5);

  std::vector<CellRef> cells = lift_solution(inst, *exact.solution);
  CHECK(cells == std::vector<CellRef>{{0, 2}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});

  PlanOutcome plan = optimal_protection_set(tk, q, SolveMode::exact);
  REQUIRE(plan.plan.has_value());
  CHECK(plan.plan->cells.size() == 5);
  CHECK(plan.plan->verification.totally_protected);
  CHECK(plan_is_forest(tk, plan.plan->cells));

  PlanOutcome paper_plan = optimal_protection_set(tk, q, SolveMode::paper);
  CHECK_FALSE(paper_plan.plan.has_value());
  CHECK_FALSE(paper_plan.infeasible_reason.empty());
}

TEST_CASE("tk22 with a single protected cell needs nothing") {
  Table tk = load_fixture("tk22.json");
  PlanOutcome plan = optimal_protection_set(tk, {{0, 0}}, SolveMode::exact);
  REQUIRE(plan.plan.has_value());
  CHECK(plan.plan->cells.empty());
}

TEST_CASE("empty solution lifts to the complement extension only") {
  Table tk = load_fixture("tk22.json");
  SemiTripartiteInstance inst = reduce_to_semitripartite(tk, {});
  SemiTripartiteSolution empty;
  empty.mode = SolveMode::exact;
  CHECK(lift_solution(inst, empty).empty());
}

TEST_CASE("mixed total graphs are rejected by the pipeline") {
  Table fig3 = load_fixture("fig3.json");
  CHECK_THROWS_AS(reduce_to_semitripartite(fig3, {}), std::invalid_argument);
  CHECK_THROWS_AS(optimal_protection_set(fig3, {{0, 0}}, SolveMode::exact),
                  std::invalid_argument);
}

TEST_CASE("exact mode matches the subset oracle on exhaustive 2x3 instances") {
  exhaustive_small_instances(2, 3, [](const Table& t, const std::vector<CellRef>& q) {
    SemiTripartiteInstance inst = reduce_to_semitripartite(t, q);
    SolveOutcome exact = solve_semitripartite(inst, SolveMode::exact);
    std::optional<int> best = min_semitripartite_oracle(inst);
    REQUIRE(exact.solution.has_value() == best.has_value());
    if (best) CHECK(static_cast<int>(exact.solution->edges.size()) == *best);
  });
}

TEST_CASE("plans verify, form forests, stay small and avoid suppressed cells") {
  for (uint64_t seed = 0; seed < 120; ++seed) {
    GeneratorConfig cfg;
    cfg.rows = 1 + static_cast<int>(seed % 4);
    cfg.cols = 1 + static_cast<int>((seed / 4) % 4);
    cfg.seed = seed * 3 + 17;
    cfg.mode = GenMode::undirected_total;
    cfg.suppression_density = 0.6;
    Table t = generate_table(cfg);
    std::vector<CellRef> q = t.suppressed_cells();
    PlanOutcome out = optimal_protection_set(t, q, SolveMode::exact);
    if (!out.plan) continue;
    const SuppressionPlan& plan = *out.plan;
    CHECK(plan.verification.totally_protected);
    CHECK(plan_is_forest(t, plan.cells));
    CHECK(static_cast<int>(plan.cells.size()) <= t.rows() + t.cols() - 1);
    for (CellRef ref : plan.cells) CHECK_FALSE(t.cell(ref).suppressed);
  }
}

TEST_CASE("exact mode never beats the oracle nor loses to paper mode") {
  for (uint64_t seed = 0; seed < 80; ++seed) {
    GeneratorConfig cfg;
    cfg.rows = 2 + static_cast<int>(seed % 3);
    cfg.cols = 2 + static_cast<int>((seed / 3) % 3);
    cfg.seed = seed * 11 + 3;
    cfg.mode = GenMode::undirected_total;
    Table t = generate_table(cfg);
    std::vector<CellRef> q = t.suppressed_cells();
    PlanOutcome exact = optimal_protection_set(t, q, SolveMode::exact);
    auto oracle = brute_force_min_protection(t, q);
    REQUIRE(exact.plan.has_value() == oracle.has_value());
    if (oracle) CHECK(exact.plan->cells.size() == oracle->cells.size());
    PlanOutcome paper = optimal_protection_set(t, q, SolveMode::paper);
    if (paper.plan && exact.plan)
      CHECK(exact.plan->cells.size() <= paper.plan->cells.size());
  }
}

TEST_CASE("monotonicity: larger q never needs fewer cells") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    GeneratorConfig cfg;
    cfg.rows = 2 + static_cast<int>(seed % 3);
    cfg.cols = 2 + static_cast<int>((seed / 3) % 3);
    cfg.seed = seed * 29 + 7;
    cfg.mode = GenMode::undirected_total;
    cfg.suppression_density = 0.7;
    Table t = generate_table(cfg);
    std::vector<CellRef> q2 = t.suppressed_cells();
    std::vector<CellRef> q1(q2.begin(), q2.begin() + q2.size() / 2);
    PlanOutcome p1 = optimal_protection_set(t, q1, SolveMode::exact);
    PlanOutcome p2 = optimal_protection_set(t, q2, SolveMode::exact);
    if (p1.plan && p2.plan) CHECK(p1.plan->cells.size() <= p2.plan->cells.size());
  }
}

TEST_CASE("degenerate instances are rejected up front") {
  // A multi-vertex component holding only row vertices cannot come out of
  // any bipartite contraction; both solver modes must refuse it instead of
  // running the case analysis on it.
  SemiTripartiteInstance inst = make_instance({
      {SuperClass::va, SuperClass::va},
      {SuperClass::vb},
  });
  CHECK_THROWS_AS(solve_semitripartite(inst, SolveMode::paper), std::invalid_argument);
  CHECK_THROWS_AS(solve_semitripartite(inst, SolveMode::exact), std::invalid_argument);
}

TEST_CASE("exact solver matches the subset oracle on random synthetic instances") {
  std::mt19937_64 rng(2024);
  int solved = 0, infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int n_comps = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<SuperClass>> comps;
    int supers = 0;
    auto draw = [&rng]() -> SuperClass {
      switch (rng() % 3) {
        case 0: return SuperClass::va;
        case 1: return SuperClass::vb;
        default: return SuperClass::vab;
      }
    };
    for (int c = 0; c < n_comps && supers < 7; ++c) {
      int size = 1 + static_cast<int>(rng() % 3);
      std::vector<SuperClass> comp;
      for (int s = 0; s < size && supers < 7; ++s, ++supers) comp.push_back(draw());
      // keep the shape reachable from a contraction: multi-vertex
      // components carry both table sides
      if (comp.size() >= 2) {
        bool has_row = false, has_col = false;
        for (SuperClass cls : comp) {
          has_row |= cls != SuperClass::vb;
          has_col |= cls != SuperClass::va;
        }
        if (!has_row) comp.front() = SuperClass::va;
        if (!has_col) comp.back() = SuperClass::vb;
      }
      comps.push_back(std::move(comp));
    }
    SemiTripartiteInstance inst = make_instance(comps);
    SolveOutcome exact = solve_semitripartite(inst, SolveMode::exact);
    std::optional<int> best = min_semitripartite_oracle(inst);
    REQUIRE(exact.solution.has_value() == best.has_value());
    if (best) {
      CHECK(static_cast<int>(exact.solution->edges.size()) == *best);
      ++solved;
    } else {
      ++infeasible;
    }
  }
  // the sample must exercise both outcomes
  CHECK(solved > 50);
  CHECK(infeasible > 5);
}

TEST_CASE("pipeline soundness: solution edges never join one contracted component") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    GeneratorConfig cfg;
    cfg.rows = 2 + static_cast<int>(seed % 3);
    cfg.cols = 2 + static_cast<int>(seed % 4);
    cfg.seed = seed + 500;
    cfg.mode = GenMode::undirected_total;
    Table t = generate_table(cfg);
    std::vector<CellRef> q = t.suppressed_cells();
    SemiTripartiteInstance inst = reduce_to_semitripartite(t, q);
    SolveOutcome out = solve_semitripartite(inst, SolveMode::exact);
    if (!out.solution) continue;
    for (auto [u, v] : out.solution->edges) CHECK(inst.comp_of[u] != inst.comp_of[v]);
  }
}
