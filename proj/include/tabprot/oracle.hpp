#pragma once

#include "tabprot/graph.hpp"
#include "tabprot/suppress.hpp"
#include "tabprot/table.hpp"

#include <functional>
#include <optional>

namespace tabprot {

enum class GenMode { undirected_total, mixed };

struct GeneratorConfig {
  int rows = 3;
  int cols = 3;
  double suppression_density = 0.5;
  long value_min = 0;   // all bounds are [value_min, value_max]
  long value_max = 9;
  uint64_t seed = 0;
  GenMode mode = GenMode::undirected_total;
  // mixed mode: probability of placing a cell value on one of its bounds;
  // one at-bound cell is always forced when positive.
  double boundary_density = 0.25;
};

// Enumerates subsets of the published cells in increasing size and
// lexicographic order, returning the first one whose additional suppression
// makes q totally protected. Ground truth for the optimizers; protection is
// judged only through the graph characterization.
std::optional<SuppressionPlan> brute_force_min_protection(const Table& t,
                                                          const std::vector<CellRef>& q);

// Reproducible from the seed alone. undirected_total mode keeps every value
// strictly inside its bounds so the total graph is all-undirected.
Table generate_table(const GeneratorConfig& cfg);

// Random sparse suppressed graph (undirected) over n_rows + n_cols vertices
// with m distinct edges; scaling benchmarks use this directly since a dense
// table of that size would be enormous.
MixedGraph generate_suppressed_graph(int n_rows, int n_cols, int m, uint64_t seed);

enum class TemplateKind {
  interior,  // every value 1, bounds [0,2]: all-undirected total graph
  mixed,     // values (r+c) mod 3, bounds [0,2]: values touch the bounds
};

// All suppression patterns and all q subsets over a fixed value template,
// for every dimension pair up to max_rows x max_cols, in canonical order.
void exhaustive_small_instances(
    int max_rows, int max_cols,
    const std::function<void(const Table&, const std::vector<CellRef>&)>& fn,
    TemplateKind kind = TemplateKind::interior);

}  // namespace tabprot
