#include "tabprot/npgen.hpp"

#include "tabprot/detection.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace tabprot {

namespace {

int64_t cell_key(CellRef ref) {
  return (static_cast<int64_t>(ref.row) << 32) | static_cast<uint32_t>(ref.col);
}

std::unordered_map<int64_t, int> edge_index(const MixedGraph& g) {
  std::unordered_map<int64_t, int> idx;
  idx.reserve(g.edges.size() * 2);
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
    idx[cell_key(g.edges[i].cell)] = i;
  return idx;
}

bool partition_connected_in(const std::vector<std::vector<int>>& vertex_groups,
                            DisjointSets& ds) {
  for (const auto& group : vertex_groups) {
    for (int v : group)
      if (ds.find(v) != ds.find(group.front())) return false;
  }
  return true;
}

}  // namespace

bool verify_N1_N2(const GraphInstance& inst, const std::vector<CellRef>& p) {
  auto total_idx = edge_index(inst.total);
  auto sup_idx = edge_index(inst.suppressed);

  MixedGraph merged = inst.suppressed;
  for (CellRef ref : p) {
    if (sup_idx.count(cell_key(ref)))
      throw std::invalid_argument("P contains a suppressed edge");
    auto it = total_idx.find(cell_key(ref));
    if (it == total_idx.end()) throw std::invalid_argument("P edge not in the total graph");
    merged.edges.push_back(inst.total.edges[it->second]);
  }

  // N1: components of (A,B,E u P) are strongly connected.
  Partition comp = connected_components(merged);
  Partition scc = strongly_connected_components(merged);
  for (int u = 0; u < merged.n_vertices(); ++u)
    for (int v = u + 1; v < merged.n_vertices(); ++v)
      if (comp[u] == comp[v] && scc[u] != scc[v]) return false;

  // N2: vertices of each component of the suppressed graph connected in
  // (A,B,P).
  Partition sup_comp = connected_components(inst.suppressed);
  std::vector<std::vector<int>> groups(group_count(sup_comp));
  for (int v = 0; v < inst.suppressed.n_vertices(); ++v) groups[sup_comp[v]].push_back(v);
  DisjointSets ds(inst.total.n_vertices());
  for (CellRef ref : p) ds.unite(ref.row, inst.total.n_rows + ref.col);
  return partition_connected_in(groups, ds);
}

std::optional<SuppressionPlan> exact_min_suppression_mixed(const Table& t,
                                                           const std::vector<CellRef>& q,
                                                           int budget) {
  for (CellRef ref : q) {
    if (!t.in_range(ref)) throw std::invalid_argument("q cell out of range");
    if (!t.cell(ref).suppressed)
      throw std::invalid_argument("q contains a non-suppressed cell " + t.cell_name(ref));
  }
  MixedGraph g = suppressed_graph(t);

  std::vector<CellRef> published;
  for (int r = 0; r < t.rows(); ++r)
    for (int c = 0; c < t.cols(); ++c)
      if (!t.cell(r, c).suppressed) published.push_back({r, c});
  if (published.size() > 22)
    throw std::runtime_error("exact mixed search supports desk-scale instances only");

  // Lower bound: the pieces glued by q edges must end up connected in
  // ((E - q) u P), and one new cell merges at most two pieces.
  auto q_idx = edge_index(g);
  std::vector<char> in_q(g.edges.size(), 0);
  for (CellRef ref : q) in_q[q_idx.at(cell_key(ref))] = 1;
  DisjointSets ds(g.n_vertices());
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    if (!in_q[e])
      ds.unite(g.row_vertex(g.edges[e].row), g.col_vertex(g.edges[e].col));
  int lower = 0;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    if (in_q[e] &&
        ds.unite(g.row_vertex(g.edges[e].row), g.col_vertex(g.edges[e].col)))
      ++lower;

  int cap = std::min<int>(budget, static_cast<int>(published.size()));
  std::vector<int> pick;
  std::vector<CellRef> subset;
  for (int size = lower; size <= cap; ++size) {
    pick.assign(size, 0);
    for (int i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      subset.clear();
      for (int i : pick) subset.push_back(published[i]);
      ProtectionReport rep = test_total_protection(with_suppressed(t, subset), q);
      if (rep.totally_protected) {
        SuppressionPlan plan;
        plan.cells = subset;
        plan.mode = SolveMode::exact;
        plan.verification = std::move(rep);
        return plan;
      }
      // next lexicographic combination
      int i = size - 1;
      while (i >= 0 && pick[i] == static_cast<int>(published.size()) - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

GraphInstance reduce_hitting_set(const HittingSetInstance& hs) {
  int q = static_cast<int>(hs.elements.size());
  int r = static_cast<int>(hs.sets.size());
  if (r == 0) throw std::invalid_argument("family of subsets must be nonempty");
  for (const auto& set : hs.sets)
    for (int i : set)
      if (i < 0 || i >= q) throw std::invalid_argument("set member out of range");

  GraphInstance inst;
  MixedGraph& total = inst.total;
  total.n_rows = q + 1;
  total.n_cols = r + 1;
  total.row_labels.push_back("a0");
  for (int i = 1; i <= q; ++i) total.row_labels.push_back("a" + std::to_string(i));
  total.col_labels.push_back("b0");
  for (int j = 1; j <= r; ++j) total.col_labels.push_back("b" + std::to_string(j));

  std::vector<std::vector<char>> member(q + 1, std::vector<char>(r + 1, 0));
  for (int j = 1; j <= r; ++j)
    for (int i : hs.sets[j - 1]) member[i + 1][j] = 1;

  for (int row = 0; row <= q; ++row) {
    for (int col = 0; col <= r; ++col) {
      Orientation dir;
      if (row == 0 && col == 0)
        dir = Orientation::toward_row;  // b0 -> a0
      else if (row == 0)
        dir = Orientation::toward_column;  // a0 -> bj
      else if (col == 0)
        dir = Orientation::toward_column;  // ai -> b0
      else if (member[row][col])
        dir = Orientation::toward_row;  // bj -> ai when si in Sj
      else
        dir = Orientation::toward_column;  // ai -> bj otherwise
      total.edges.push_back({row, col, dir, CellRef{row, col}});
    }
  }

  inst.suppressed = total;
  inst.suppressed.edges.clear();
  for (int j = 1; j <= r; ++j)
    inst.suppressed.edges.push_back({0, j, Orientation::toward_column, CellRef{0, j}});

  inst.budget = hs.budget + r + 1;
  return inst;
}

Table graph_to_table(const GraphInstance& inst) {
  auto sup_idx = edge_index(inst.suppressed);
  Table t;
  t.row_labels = inst.total.row_labels;
  t.col_labels = inst.total.col_labels;
  t.cells.assign(static_cast<size_t>(t.rows()) * t.cols(), Cell{});
  if (inst.total.edges.size() != t.cells.size())
    throw std::invalid_argument("total graph is not complete bipartite");
  for (const GraphEdge& e : inst.total.edges) {
    Cell cell;
    cell.lower = Bound::finite(0);
    cell.upper = Bound::finite(2);
    switch (e.dir) {
      case Orientation::undirected:
        cell.value = Value(1);
        break;
      case Orientation::toward_column:
        cell.value = Value(0);
        break;
      case Orientation::toward_row:
        cell.value = Value(2);
        break;
    }
    cell.suppressed = sup_idx.count(cell_key(e.cell)) > 0;
    t.cell(e.row, e.col) = std::move(cell);
  }
  for (int r = 0; r < t.rows(); ++r) {
    Value s = 0;
    for (int c = 0; c < t.cols(); ++c) s += *t.cell(r, c).value;
    t.row_sums.push_back(s);
  }
  for (int c = 0; c < t.cols(); ++c) {
    Value s = 0;
    for (int r = 0; r < t.rows(); ++r) s += *t.cell(r, c).value;
    t.col_sums.push_back(s);
  }
  return t;
}

std::optional<std::vector<int>> solve_hitting_set(const HittingSetInstance& hs) {
  int q = static_cast<int>(hs.elements.size());
  if (q > 20) throw std::runtime_error("hitting-set solver supports desk-scale instances only");
  for (const auto& set : hs.sets)
    if (set.empty()) return std::nullopt;  // an empty set can never be hit

  std::vector<int> pick;
  for (int size = 0; size <= q; ++size) {
    pick.assign(size, 0);
    for (int i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      bool hits_all = true;
      for (const auto& set : hs.sets) {
        bool hit = false;
        for (int i : pick)
          if (std::find(set.begin(), set.end(), i) != set.end()) {
            hit = true;
            break;
          }
        if (!hit) {
          hits_all = false;
          break;
        }
      }
      if (hits_all) {
        if (size > hs.budget) return std::nullopt;  // minimum exceeds h
        return pick;
      }
      int i = size - 1;
      while (i >= 0 && pick[i] == q - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

HittingSetInstance hitting_set_from_json(const nlohmann::json& doc) {
  HittingSetInstance hs;
  for (const auto& e : doc.at("elements")) hs.elements.push_back(e.get<std::string>());
  for (const auto& set : doc.at("sets")) {
    std::vector<int> indices;
    for (const auto& name : set) {
      auto it = std::find(hs.elements.begin(), hs.elements.end(), name.get<std::string>());
      if (it == hs.elements.end())
        throw std::runtime_error("hitting set: unknown element " + name.get<std::string>());
      indices.push_back(static_cast<int>(it - hs.elements.begin()));
    }
    hs.sets.push_back(std::move(indices));
  }
  hs.budget = doc.at("budget").get<int>();
  if (hs.budget < 0) throw std::runtime_error("hitting set: negative budget");
  return hs;
}

nlohmann::json graph_instance_to_json(const GraphInstance& inst) {
  nlohmann::json out;
  out["rows"] = inst.total.row_labels;
  out["cols"] = inst.total.col_labels;
  out["total"] = dump_edges(inst.total);
  out["suppressed"] = dump_edges(inst.suppressed);
  out["budget"] = inst.budget;
  return out;
}

}  // namespace tabprot
