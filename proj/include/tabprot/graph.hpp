#pragma once

#include "tabprot/table.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tabprot {

// Edge orientation derived from the cell value: strictly inside the bounds
// gives an undirected edge, value at the lower bound points at the column,
// value at the upper bound points at the row.
enum class Orientation { undirected, toward_column, toward_row };

struct GraphEdge {
  int row = 0;  // row index
  int col = 0;  // column index
  Orientation dir = Orientation::undirected;
  CellRef cell;
};

// Bipartite mixed graph over row vertices and column vertices. Vertex ids
// are the row indices 0..n_rows-1 followed by column vertices
// n_rows..n_rows+n_cols-1.
struct MixedGraph {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<GraphEdge> edges;

  int n_vertices() const { return n_rows + n_cols; }
  int row_vertex(int r) const { return r; }
  int col_vertex(int c) const { return n_rows + c; }
  bool is_row_vertex(int v) const { return v < n_rows; }
  // "row:<label>" or "col:<label>"
  std::string vertex_label(int v) const;
};

// Group id per vertex. Groups are numbered 0.. in order of their smallest
// member, so partitions are deterministic.
using Partition = std::vector<int>;

int group_count(const Partition& p);

// Union-find with union by rank and path compression.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n), rank_(n, 0) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  int find(int x) {
    int root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      int next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // Returns true when two distinct classes were merged.
  bool unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return false;
    if (rank_[rx] < rank_[ry]) std::swap(rx, ry);
    parent_[ry] = rx;
    if (rank_[rx] == rank_[ry]) ++rank_[rx];
    return true;
  }

  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
  std::vector<uint8_t> rank_;
};

// One vertex per row/column, one edge per suppressed cell. Requires every
// suppressed cell to carry a value (orientation cannot be derived from
// bounds alone), so graph construction runs on complete tables.
MixedGraph suppressed_graph(const Table& t);

// One edge per cell of a complete table. The suppressed graph is its
// subgraph restricted to the suppressed cells.
MixedGraph total_graph(const Table& t);

// Components of the graph ignoring directions.
Partition connected_components(const MixedGraph& g);

// Strong connectivity under mutual traversable reachability; an undirected
// edge is traversable in both directions, so for all-undirected graphs this
// equals connected_components.
Partition strongly_connected_components(const MixedGraph& g);

struct ContractedGraph {
  struct SuperVertex {
    std::vector<int> rows;  // original row indices, sorted
    std::vector<int> cols;  // original column indices, sorted
  };
  std::vector<SuperVertex> supers;
  std::vector<int> super_of;                // original vertex -> super id
  std::vector<std::pair<int, int>> edges;   // collapsed, deduped, u < v
};

// Contracts each group into one super-vertex; vertices not covered by any
// group become singletons. Super ids are ordered by smallest original
// member. When require_within_component is set, a group spanning two
// connected components throws std::invalid_argument.
ContractedGraph contract(const MixedGraph& g,
                         const std::vector<std::vector<int>>& groups,
                         bool require_within_component = true);

// Debug dump, one line per edge: "1 -- a", "1 -> a" (toward column),
// "1 <- a" (toward row). Edges in row-major cell order.
std::vector<std::string> dump_edges(const MixedGraph& g);

// Arc-level adjacency used by the traversal algorithms: undirected edges
// expand to two antiparallel arcs.
struct ArcAdjacency {
  std::vector<int> head;       // CSR offsets, size n+1
  std::vector<int> to;         // target vertex per arc
  std::vector<int> edge_of;    // originating edge index per arc
};

ArcAdjacency build_arcs(const MixedGraph& g);

// Direction-blind adjacency (every edge usable both ways).
ArcAdjacency build_blind_adjacency(const MixedGraph& g);

}  // namespace tabprot
