#include "tabprot/detection.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tabprot {

namespace {

int64_t cell_key(CellRef ref) { return (static_cast<int64_t>(ref.row) << 32) | static_cast<uint32_t>(ref.col); }

std::unordered_map<int64_t, int> edge_index(const MixedGraph& g) {
  std::unordered_map<int64_t, int> idx;
  idx.reserve(g.edges.size() * 2);
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
    idx[cell_key(g.edges[i].cell)] = i;
  return idx;
}

// Breadth-first scratch reused across many single-source searches.
struct SearchScratch {
  std::vector<int> stamp;
  std::vector<int> queue;
  std::vector<int> parent_arc;
  int epoch = 0;

  explicit SearchScratch(int n) : stamp(n, 0), queue(), parent_arc(n, -1) { queue.reserve(n); }

  void begin() {
    ++epoch;
    queue.clear();
  }
  bool seen(int v) const { return stamp[v] == epoch; }
  void visit(int v, int via_arc) {
    stamp[v] = epoch;
    parent_arc[v] = via_arc;
    queue.push_back(v);
  }
};

// True iff `to` is reachable from `from` along traversable arcs, never
// crossing the two arcs of edge `skip_edge` and never leaving vertices whose
// scc id differs from `within_scc` (pass -1 to search the whole graph).
bool reachable(const ArcAdjacency& adj, int from, int to, int skip_edge,
               const Partition* scc, int within_scc, SearchScratch& scr) {
  scr.begin();
  scr.visit(from, -1);
  for (size_t qi = 0; qi < scr.queue.size(); ++qi) {
    int u = scr.queue[qi];
    if (u == to) return true;
    for (int a = adj.head[u]; a < adj.head[u + 1]; ++a) {
      if (adj.edge_of[a] == skip_edge) continue;
      int w = adj.to[a];
      if (scr.seen(w)) continue;
      if (scc && (*scc)[w] != within_scc) continue;
      scr.visit(w, a);
    }
  }
  return false;
}

bool edge_on_cycle(const MixedGraph& g, const ArcAdjacency& adj, const Partition& scc,
                   int e, SearchScratch& scr) {
  const GraphEdge& edge = g.edges[e];
  int u = g.row_vertex(edge.row), v = g.col_vertex(edge.col);
  if (scc[u] != scc[v]) return false;
  if (edge.dir != Orientation::undirected) {
    // A vertex-simple return path exists exactly when both endpoints share a
    // strongly connected component, and it cannot reuse the edge itself.
    return true;
  }
  // Undirected edges can close a cycle through themselves, so the return
  // path must avoid the edge explicitly. Paths between vertices of one
  // strongly connected component never leave it.
  return reachable(adj, u, v, e, &scc, scc[u], scr) ||
         reachable(adj, v, u, e, &scc, scc[u], scr);
}

std::vector<CellRef> gather_invariants(const MixedGraph& g, const std::vector<char>& on_cycle) {
  std::vector<CellRef> out;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    if (!on_cycle[e]) out.push_back(g.edges[e].cell);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<CellRef> invariant_cells_serial(const MixedGraph& g) {
  ArcAdjacency adj = build_arcs(g);
  Partition scc = strongly_connected_components(g);
  SearchScratch scr(g.n_vertices());
  std::vector<char> on_cycle(g.edges.size(), 0);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    on_cycle[e] = edge_on_cycle(g, adj, scc, e, scr);
  return gather_invariants(g, on_cycle);
}

std::vector<CellRef> invariant_cells(const MixedGraph& g) {
  ArcAdjacency adj = build_arcs(g);
  Partition scc = strongly_connected_components(g);
  int m = static_cast<int>(g.edges.size());
  std::vector<char> on_cycle(m, 0);
#ifdef _OPENMP
#pragma omp parallel
  {
    SearchScratch scr(g.n_vertices());
#pragma omp for schedule(dynamic, 16)
    for (int e = 0; e < m; ++e) on_cycle[e] = edge_on_cycle(g, adj, scc, e, scr);
  }
#else
  SearchScratch scr(g.n_vertices());
  for (int e = 0; e < m; ++e) on_cycle[e] = edge_on_cycle(g, adj, scc, e, scr);
#endif
  return gather_invariants(g, on_cycle);
}

std::vector<CellRef> invariant_cells(const Table& t) {
  return invariant_cells(suppressed_graph(t));
}

namespace {

std::vector<int> resolve_q(const MixedGraph& g, const std::vector<CellRef>& q) {
  auto idx = edge_index(g);
  std::vector<int> edges;
  edges.reserve(q.size());
  for (CellRef ref : q) {
    auto it = idx.find(cell_key(ref));
    if (it == idx.end())
      throw std::invalid_argument("q contains a cell that is not suppressed");
    edges.push_back(it->second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// Does removing `removed` (a subset of internal edges of component vertices
// `verts`) leave those vertices connected, using only edges internal to the
// component?
bool still_connected(const MixedGraph& g, const std::vector<int>& verts,
                     const std::vector<int>& internal_edges,
                     const std::vector<char>& removed) {
  DisjointSets ds(g.n_vertices());
  for (int e : internal_edges) {
    if (removed[e]) continue;
    const GraphEdge& edge = g.edges[e];
    ds.unite(g.row_vertex(edge.row), g.col_vertex(edge.col));
  }
  int root = ds.find(verts.front());
  for (int v : verts)
    if (ds.find(v) != root) return false;
  return true;
}

}  // namespace

ProtectionReport test_total_protection(const MixedGraph& g, const std::vector<CellRef>& q) {
  std::vector<int> q_edges = resolve_q(g, q);
  std::vector<char> in_q(g.edges.size(), 0);
  for (int e : q_edges) in_q[e] = 1;

  Partition scc = strongly_connected_components(g);

  // Condition 1: every q edge internal to one strongly connected component.
  for (int e : q_edges) {
    const GraphEdge& edge = g.edges[e];
    if (scc[g.row_vertex(edge.row)] != scc[g.col_vertex(edge.col)]) {
      ProtectionReport rep;
      rep.totally_protected = false;
      rep.witness = ProtectionWitness{ProtectionWitness::Kind::invariant_direction,
                                      {edge.cell},
                                      {}};
      return rep;
    }
  }

  // Condition 2: each component minus q stays direction-blind connected.
  int n = g.n_vertices();
  DisjointSets ds(n);
  std::vector<std::vector<int>> internal(group_count(scc));
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const GraphEdge& edge = g.edges[e];
    int u = g.row_vertex(edge.row), v = g.col_vertex(edge.col);
    if (scc[u] != scc[v]) continue;
    internal[scc[u]].push_back(e);
    if (!in_q[e]) ds.unite(u, v);
  }
  std::vector<std::vector<int>> members(group_count(scc));
  for (int v = 0; v < n; ++v) members[scc[v]].push_back(v);

  for (int d = 0; d < group_count(scc); ++d) {
    const std::vector<int>& verts = members[d];
    int root = ds.find(verts.front());
    bool connected = true;
    for (int v : verts)
      if (ds.find(v) != root) {
        connected = false;
        break;
      }
    if (connected) continue;

    // Build a minimal edge cut from the q edges leaving the piece that
    // contains the smallest vertex of D.
    std::vector<char> in_piece(n, 0);
    int piece = ds.find(verts.front());
    for (int v : verts) in_piece[v] = (ds.find(v) == piece);

    std::vector<int> cut;
    for (int e : internal[d]) {
      if (!in_q[e]) continue;
      const GraphEdge& edge = g.edges[e];
      if (in_piece[g.row_vertex(edge.row)] != in_piece[g.col_vertex(edge.col)])
        cut.push_back(e);
    }
    std::sort(cut.begin(), cut.end(), [&g](int a, int b) { return g.edges[a].cell < g.edges[b].cell; });

    std::vector<char> removed(g.edges.size(), 0);
    for (int e : cut) removed[e] = 1;
    std::vector<int> kept;
    for (int e : cut) {
      removed[e] = 0;  // try putting this edge back
      if (still_connected(g, verts, internal[d], removed)) {
        removed[e] = 1;  // still needed in the cut
        kept.push_back(e);
      }
    }

    ProtectionWitness w;
    w.kind = ProtectionWitness::Kind::edge_cut;
    for (int e : kept) w.cells.push_back(g.edges[e].cell);
    std::sort(w.cells.begin(), w.cells.end());
    w.scc_vertices = verts;
    ProtectionReport rep;
    rep.totally_protected = false;
    rep.witness = std::move(w);
    return rep;
  }

  return ProtectionReport{true, std::nullopt};
}

ProtectionReport test_total_protection(const Table& t, const std::vector<CellRef>& q) {
  for (CellRef ref : q) {
    if (!t.in_range(ref)) throw std::invalid_argument("q cell out of range");
    if (!t.cell(ref).suppressed)
      throw std::invalid_argument("q contains a non-suppressed cell " + t.cell_name(ref));
  }
  return test_total_protection(suppressed_graph(t), q);
}

nlohmann::json report_to_json(const ProtectionReport& rep, const MixedGraph& g) {
  nlohmann::json out;
  out["verdict"] = rep.totally_protected ? "protected" : "not_protected";
  if (rep.witness) {
    nlohmann::json w;
    w["kind"] = rep.witness->kind == ProtectionWitness::Kind::invariant_direction
                    ? "invariant_direction"
                    : "edge_cut";
    nlohmann::json cells = nlohmann::json::array();
    for (CellRef ref : rep.witness->cells) {
      cells.push_back({{"row", g.row_labels[ref.row]}, {"col", g.col_labels[ref.col]}});
    }
    w["cells"] = std::move(cells);
    nlohmann::json scc = nlohmann::json::array();
    for (int v : rep.witness->scc_vertices) scc.push_back(g.vertex_label(v));
    w["scc"] = std::move(scc);
    out["witness"] = std::move(w);
  }
  return out;
}

Delta cycle_delta(const LabeledCycle& c, const Value& scale) {
  const auto& steps = c.steps;
  if (steps.size() < 4 || steps.size() % 2 != 0)
    throw std::invalid_argument("malformed cycle: needs an even number (>= 4) of steps");
  Delta d;
  for (size_t i = 0; i < steps.size(); ++i) {
    const CycleStep& s = steps[i];
    const CycleStep& next = steps[(i + 1) % steps.size()];
    if (s.row_to_col == next.row_to_col)
      throw std::invalid_argument("malformed cycle: traversal directions must alternate");
    // Chaining: a row->col step ends at its column, which the next step
    // must leave; likewise for col->row.
    if (s.row_to_col ? (next.cell.col != s.cell.col) : (next.cell.row != s.cell.row))
      throw std::invalid_argument("malformed cycle: consecutive steps do not chain");
    if (d.count(s.cell)) throw std::invalid_argument("malformed cycle: repeated edge");
    d[s.cell] = s.row_to_col ? scale : Value(-scale);
  }
  if (scale == 0) return Delta{};
  return d;
}

namespace {

std::optional<std::vector<int>> arc_path(const ArcAdjacency& adj, int from, int to,
                                         int skip_edge, int n) {
  SearchScratch scr(n);
  if (!reachable(adj, from, to, skip_edge, nullptr, -1, scr)) return std::nullopt;
  std::vector<int> arcs;
  int v = to;
  while (v != from) {
    int a = scr.parent_arc[v];
    arcs.push_back(a);
    // walk back to the arc's source
    int u = -1;
    // adjacency stores no source per arc; recover it from the CSR offsets
    // lazily by binary search over head[].
    int lo = 0, hi = static_cast<int>(adj.head.size()) - 2;
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (adj.head[mid] <= a)
        lo = mid;
      else
        hi = mid - 1;
    }
    u = lo;
    v = u;
  }
  std::reverse(arcs.begin(), arcs.end());
  return arcs;
}

CycleStep step_from_arc(const MixedGraph& g, int source_vertex, int edge) {
  return CycleStep{g.edges[edge].cell, g.is_row_vertex(source_vertex)};
}

}  // namespace

std::optional<std::pair<Assignment, Assignment>> perturbation_witness(const Table& t,
                                                                      CellRef cell) {
  if (!t.in_range(cell) || !t.cell(cell).suppressed)
    throw std::invalid_argument("cell not suppressed");
  MixedGraph g = suppressed_graph(t);
  auto idx = edge_index(g);
  int e = idx.at(cell_key(cell));
  const GraphEdge& edge = g.edges[e];
  int ru = g.row_vertex(edge.row), cv = g.col_vertex(edge.col);

  ArcAdjacency adj = build_arcs(g);
  int n = g.n_vertices();

  // First traversal of the cycle is the edge itself; the rest is a
  // vertex-simple traversable return path that avoids the edge.
  int start = -1, finish = -1;
  bool first_row_to_col = true;
  std::optional<std::vector<int>> path;
  if (edge.dir == Orientation::toward_column) {
    start = cv, finish = ru, first_row_to_col = true;
    path = arc_path(adj, start, finish, -1, n);
  } else if (edge.dir == Orientation::toward_row) {
    start = ru, finish = cv, first_row_to_col = false;
    path = arc_path(adj, start, finish, -1, n);
  } else {
    start = cv, finish = ru, first_row_to_col = true;
    path = arc_path(adj, start, finish, e, n);
    if (!path) {
      start = ru, finish = cv, first_row_to_col = false;
      path = arc_path(adj, start, finish, e, n);
    }
  }
  if (!path) return std::nullopt;

  LabeledCycle cycle;
  cycle.steps.push_back(CycleStep{cell, first_row_to_col});
  int at = start;
  for (int a : *path) {
    cycle.steps.push_back(step_from_arc(g, at, adj.edge_of[a]));
    at = adj.to[a];
  }

  Delta unit = cycle_delta(cycle, 1);

  // Half of the smallest admissible slack along the cycle; infinite bounds
  // contribute no constraint and a fully unconstrained cycle moves by 1.
  std::optional<Value> min_slack;
  for (const auto& [ref, label] : unit) {
    const Cell& cl = t.cell(ref);
    const Bound& b = label > 0 ? cl.upper : cl.lower;
    if (!b.is_finite()) continue;
    Value slack = label > 0 ? Value(b.value - *cl.value) : Value(*cl.value - b.value);
    if (!min_slack || slack < *min_slack) min_slack = slack;
  }
  Value eps = min_slack ? Value(*min_slack / 2) : Value(1);

  Assignment base = original_assignment(t);
  Assignment moved = apply_delta(base, cycle_delta(cycle, eps));
  return std::make_pair(std::move(base), std::move(moved));
}

}  // namespace tabprot
