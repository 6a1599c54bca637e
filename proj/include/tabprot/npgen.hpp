#pragma once

#include "tabprot/graph.hpp"
#include "tabprot/suppress.hpp"
#include "tabprot/table.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace tabprot {

// Instance of the graph form of the general optimal-suppression problem:
// a complete bipartite mixed total graph, its suppressed subgraph, and an
// edge budget.
struct GraphInstance {
  MixedGraph total;       // exactly one edge per (row, column) pair
  MixedGraph suppressed;  // subgraph of total
  int budget = 0;
};

struct HittingSetInstance {
  std::vector<std::string> elements;   // s_1..s_q
  std::vector<std::vector<int>> sets;  // S_1..S_r as element indices
  int budget = 0;                      // h
};

// Property N1: every connected component of (A,B,E u P) is strongly
// connected. Property N2: the vertices of each connected component of the
// suppressed graph are connected in (A,B,P). P is given as cells; its
// orientations come from the total graph. Throws when P meets E.
bool verify_N1_N2(const GraphInstance& inst, const std::vector<CellRef>& p);

// Minimum-size set of published cells whose additional suppression makes q
// totally protected, within the budget; nullopt when none exists. Mixed
// total graphs allowed; desk-scale exhaustive search with a spanning lower
// bound.
std::optional<SuppressionPlan> exact_min_suppression_mixed(const Table& t,
                                                           const std::vector<CellRef>& q,
                                                           int budget);

// Rules 1-5 of the Hitting-Set reduction.
GraphInstance reduce_hitting_set(const HittingSetInstance& hs);

// Table whose total and suppressed graphs are exactly the instance's
// graphs: undirected cells value 1, row-to-column cells 0, column-to-row
// cells 2, all bounds [0,2].
Table graph_to_table(const GraphInstance& inst);

// Minimum hitting set when one of size <= budget exists (element indices,
// lexicographically smallest among minimum ones), nullopt otherwise.
std::optional<std::vector<int>> solve_hitting_set(const HittingSetInstance& hs);

HittingSetInstance hitting_set_from_json(const nlohmann::json& doc);
nlohmann::json graph_instance_to_json(const GraphInstance& inst);

}  // namespace tabprot
