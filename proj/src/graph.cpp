#include "tabprot/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace tabprot {

namespace {

Orientation orient(const Cell& cell, const Table& t, CellRef ref) {
  if (!cell.value)
    throw std::invalid_argument(
        "graph construction needs the cell value at " + t.cell_name(ref) +
        "; orientation cannot be derived from bounds alone");
  if (cell.lower.compare(*cell.value) == 0) return Orientation::toward_column;
  if (cell.upper.compare(*cell.value) == 0) return Orientation::toward_row;
  return Orientation::undirected;
}

MixedGraph graph_shell(const Table& t) {
  MixedGraph g;
  g.n_rows = t.rows();
  g.n_cols = t.cols();
  g.row_labels = t.row_labels;
  g.col_labels = t.col_labels;
  return g;
}

// Renumbers group ids so they appear in order of their smallest member.
Partition canonicalize(std::vector<int> raw, int n_groups) {
  std::vector<int> remap(n_groups, -1);
  int next = 0;
  for (int raw_id : raw) {
    if (remap[raw_id] < 0) remap[raw_id] = next++;
  }
  for (int& x : raw) x = remap[x];
  return raw;
}

}  // namespace

std::string MixedGraph::vertex_label(int v) const {
  if (is_row_vertex(v)) return "row:" + row_labels[v];
  return "col:" + col_labels[v - n_rows];
}

int group_count(const Partition& p) {
  int mx = -1;
  for (int g : p) mx = std::max(mx, g);
  return mx + 1;
}

MixedGraph suppressed_graph(const Table& t) {
  MixedGraph g = graph_shell(t);
  for (int r = 0; r < t.rows(); ++r) {
    for (int c = 0; c < t.cols(); ++c) {
      const Cell& cell = t.cell(r, c);
      if (!cell.suppressed) continue;
      g.edges.push_back({r, c, orient(cell, t, {r, c}), CellRef{r, c}});
    }
  }
  return g;
}

MixedGraph total_graph(const Table& t) {
  MixedGraph g = graph_shell(t);
  for (int r = 0; r < t.rows(); ++r) {
    for (int c = 0; c < t.cols(); ++c) {
      const Cell& cell = t.cell(r, c);
      g.edges.push_back({r, c, orient(cell, t, {r, c}), CellRef{r, c}});
    }
  }
  return g;
}

ArcAdjacency build_arcs(const MixedGraph& g) {
  int n = g.n_vertices();
  std::vector<int> degree(n, 0);
  for (const GraphEdge& e : g.edges) {
    int u = g.row_vertex(e.row), v = g.col_vertex(e.col);
    if (e.dir != Orientation::toward_row) ++degree[u];
    if (e.dir != Orientation::toward_column) ++degree[v];
  }
  ArcAdjacency adj;
  adj.head.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) adj.head[i + 1] = adj.head[i] + degree[i];
  adj.to.assign(adj.head[n], 0);
  adj.edge_of.assign(adj.head[n], 0);
  std::vector<int> cursor(adj.head.begin(), adj.head.end() - 1);
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
    const GraphEdge& e = g.edges[i];
    int u = g.row_vertex(e.row), v = g.col_vertex(e.col);
    if (e.dir != Orientation::toward_row) {
      adj.to[cursor[u]] = v;
      adj.edge_of[cursor[u]++] = i;
    }
    if (e.dir != Orientation::toward_column) {
      adj.to[cursor[v]] = u;
      adj.edge_of[cursor[v]++] = i;
    }
  }
  return adj;
}

ArcAdjacency build_blind_adjacency(const MixedGraph& g) {
  MixedGraph blind = g;
  for (GraphEdge& e : blind.edges) e.dir = Orientation::undirected;
  return build_arcs(blind);
}

Partition connected_components(const MixedGraph& g) {
  DisjointSets ds(g.n_vertices());
  for (const GraphEdge& e : g.edges) ds.unite(g.row_vertex(e.row), g.col_vertex(e.col));
  std::vector<int> raw(g.n_vertices());
  std::vector<int> root_id(g.n_vertices(), -1);
  int next = 0;
  for (int v = 0; v < g.n_vertices(); ++v) {
    int r = ds.find(v);
    if (root_id[r] < 0) root_id[r] = next++;
    raw[v] = root_id[r];
  }
  return canonicalize(std::move(raw), next);
}

Partition strongly_connected_components(const MixedGraph& g) {
  // Iterative Tarjan over the arc expansion.
  int n = g.n_vertices();
  ArcAdjacency adj = build_arcs(g);

  std::vector<int> index(n, -1), lowlink(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  stack.reserve(n);
  int next_index = 0, next_comp = 0;

  struct Frame {
    int v;
    int arc;
  };
  std::vector<Frame> frames;

  for (int start = 0; start < n; ++start) {
    if (index[start] >= 0) continue;
    frames.push_back({start, adj.head[start]});
    index[start] = lowlink[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;

    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.arc < adj.head[f.v + 1]) {
        int w = adj.to[f.arc++];
        if (index[w] < 0) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, adj.head[w]});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
        if (lowlink[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = next_comp;
            if (w == v) break;
          }
          ++next_comp;
        }
      }
    }
  }
  return canonicalize(std::move(comp), next_comp);
}

ContractedGraph contract(const MixedGraph& g,
                         const std::vector<std::vector<int>>& groups,
                         bool require_within_component) {
  int n = g.n_vertices();
  std::vector<int> group_of(n, -1);
  for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
    if (groups[gi].empty()) throw std::invalid_argument("empty contraction group");
    for (int v : groups[gi]) {
      if (v < 0 || v >= n) throw std::invalid_argument("contraction vertex out of range");
      if (group_of[v] >= 0) throw std::invalid_argument("contraction groups overlap");
      group_of[v] = gi;
    }
  }
  if (require_within_component && !groups.empty()) {
    Partition comp = connected_components(g);
    for (const auto& group : groups)
      for (int v : group)
        if (comp[v] != comp[group.front()])
          throw std::invalid_argument("contraction group spans two components");
  }

  ContractedGraph out;
  out.super_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (out.super_of[v] >= 0) continue;
    ContractedGraph::SuperVertex sv;
    int id = static_cast<int>(out.supers.size());
    if (group_of[v] >= 0) {
      // v is the smallest member of its group: larger members are assigned
      // here, smaller ones would have assigned v already.
      std::vector<int> members = groups[group_of[v]];
      std::sort(members.begin(), members.end());
      for (int m : members) {
        out.super_of[m] = id;
        if (g.is_row_vertex(m))
          sv.rows.push_back(m);
        else
          sv.cols.push_back(m - g.n_rows);
      }
    } else {
      out.super_of[v] = id;
      if (g.is_row_vertex(v))
        sv.rows.push_back(v);
      else
        sv.cols.push_back(v - g.n_rows);
    }
    out.supers.push_back(std::move(sv));
  }

  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges.size());
  for (const GraphEdge& e : g.edges) {
    int a = out.super_of[g.row_vertex(e.row)];
    int b = out.super_of[g.col_vertex(e.col)];
    if (a == b) continue;  // internal to a tree
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.edges = std::move(edges);
  return out;
}

std::vector<std::string> dump_edges(const MixedGraph& g) {
  std::vector<std::string> lines;
  lines.reserve(g.edges.size());
  std::vector<GraphEdge> sorted = g.edges;
  std::sort(sorted.begin(), sorted.end(),
            [](const GraphEdge& a, const GraphEdge& b) { return a.cell < b.cell; });
  for (const GraphEdge& e : sorted) {
    const char* sep = e.dir == Orientation::undirected  ? "--"
                      : e.dir == Orientation::toward_column ? "->"
                                                            : "<-";
    lines.push_back(g.row_labels[e.row] + " " + sep + " " + g.col_labels[e.col]);
  }
  return lines;
}

}  // namespace tabprot
