#pragma once

#include "tabprot/detection.hpp"
#include "tabprot/graph.hpp"
#include "tabprot/table.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tabprot {

enum class SolveMode { paper, exact };

enum class SuperClass { va, vb, vab };

// Contracted instance produced by the reduction pipeline: connected
// components of the suppressed graph, a maximal forest per component built
// first from non-protected suppressed edges and then from published cells
// inside the component, contracted to super-vertices and classified.
struct SemiTripartiteInstance {
  std::vector<ContractedGraph::SuperVertex> supers;  // members sorted
  std::vector<SuperClass> cls;                       // per super
  std::vector<int> comp_of;                          // super -> component id
  std::vector<std::vector<int>> comps;               // component id -> supers
  std::vector<CellRef> complement_cells;             // forest-extension cells
  std::vector<CellRef> suppressed;                   // sorted, for lift checks
  int n_rows = 0;
  int n_cols = 0;

  int n_supers() const { return static_cast<int>(supers.size()); }
  bool multi(int comp) const { return comps[comp].size() >= 2; }
  // An edge is usable iff it joins different components and is not between
  // two single row vertices or two single column vertices.
  bool allowed_edge(int u, int v) const {
    return comp_of[u] != comp_of[v] &&
           !(cls[u] == SuperClass::va && cls[v] == SuperClass::va) &&
           !(cls[u] == SuperClass::vb && cls[v] == SuperClass::vb);
  }
};

struct SemiTripartiteSolution {
  std::vector<std::pair<int, int>> edges;  // super pairs, u < v, sorted
  SolveMode mode = SolveMode::exact;
  int w_good = 0;
  int w_bad = 0;
  int d = 0;  // vertices in good and bad components
};

struct SolveOutcome {
  std::optional<SemiTripartiteSolution> solution;
  std::string infeasible_reason;  // nonempty iff no solution
};

struct SuppressionPlan {
  std::vector<CellRef> cells;  // published cells to suppress, sorted
  SolveMode mode = SolveMode::exact;
  ProtectionReport verification;  // of the augmented table, for q
  int w_good = 0;
  int w_bad = 0;
  int d = 0;
};

struct PlanOutcome {
  std::optional<SuppressionPlan> plan;
  std::string infeasible_reason;
};

nlohmann::json plan_to_json(const SuppressionPlan& plan, const MixedGraph& g);

// Steps M1-M6. The suppressed graph must be all-undirected (tables with a
// mixed total graph go through the general solver instead). Runs in
// near-linear time; complement graphs are never materialized.
SemiTripartiteInstance reduce_to_semitripartite(const MixedGraph& suppressed,
                                                const std::vector<CellRef>& q);
SemiTripartiteInstance reduce_to_semitripartite(const Table& t,
                                                const std::vector<CellRef>& q);

// paper mode follows the published case analysis literally, including its
// infeasibility answers; exact mode certifies a minimum by branch and bound
// over semi-tripartite forests (desk-scale instances).
SolveOutcome solve_semitripartite(const SemiTripartiteInstance& inst, SolveMode mode);

// Picks one published cell per solution edge and adds the forest-extension
// cells. Throws std::logic_error on internal inconsistencies.
std::vector<CellRef> lift_solution(const SemiTripartiteInstance& inst,
                                   const SemiTripartiteSolution& sol);

// reduce + solve + lift + verify. The returned plan's augmented table is
// totally protected for q.
PlanOutcome optimal_protection_set(const Table& t, const std::vector<CellRef>& q,
                                   SolveMode mode);
PlanOutcome optimal_protection_set(const MixedGraph& suppressed,
                                   const std::vector<CellRef>& q, SolveMode mode);

}  // namespace tabprot
