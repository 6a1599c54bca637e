#pragma once

#include "tabprot/graph.hpp"
#include "tabprot/table.hpp"

#include <json.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace tabprot {

struct ProtectionWitness {
  enum class Kind { invariant_direction, edge_cut };
  Kind kind = Kind::invariant_direction;
  // invariant_direction: the one offending edge. edge_cut: a minimal subset
  // of q that cuts the strongly connected component below.
  std::vector<CellRef> cells;
  // The component D the cut disconnects (vertex ids, sorted); empty for the
  // invariant_direction kind.
  std::vector<int> scc_vertices;
};

struct ProtectionReport {
  bool totally_protected = false;
  std::optional<ProtectionWitness> witness;  // present iff not protected
};

nlohmann::json report_to_json(const ProtectionReport& rep, const MixedGraph& g);

// One traversal step of a direction-blind cycle; the step label is +1 when
// it goes row -> column and -1 otherwise, which alternates around any
// bipartite cycle.
struct CycleStep {
  CellRef cell;
  bool row_to_col = true;
};

struct LabeledCycle {
  std::vector<CycleStep> steps;
};

// The suppressed cells whose edge lies on no edge-simple traversable cycle
// of the suppressed graph. Sorted row-major. The table form requires a
// complete table.
std::vector<CellRef> invariant_cells(const Table& t);
std::vector<CellRef> invariant_cells(const MixedGraph& g);
// Single-threaded reference for the same computation; kept for tests and
// for the kernel benchmark.
std::vector<CellRef> invariant_cells_serial(const MixedGraph& g);

// Total protection test: q is protected iff every q edge has both endpoints
// in one strongly connected component and every component stays
// direction-blind connected after removing q. Linear in m+n; the witness is
// produced only on the not-protected path.
ProtectionReport test_total_protection(const Table& t, const std::vector<CellRef>& q);
ProtectionReport test_total_protection(const MixedGraph& suppressed,
                                       const std::vector<CellRef>& q);

// Delta assigning label*scale on the cycle's cells. Adding it to any
// unbounded feasible assignment preserves all row and column sums.
Delta cycle_delta(const LabeledCycle& c, const Value& scale);

// Two bounded feasible assignments differing at the given suppressed cell,
// or nullopt when the cell is invariant. The pair is built by pushing
// +/- epsilon around an edge-simple traversable cycle through the cell.
std::optional<std::pair<Assignment, Assignment>> perturbation_witness(const Table& t,
                                                                      CellRef cell);

}  // namespace tabprot
