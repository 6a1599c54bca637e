#include "tabprot/suppress.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace tabprot {

namespace {

int64_t cell_key(CellRef ref) {
  return (static_cast<int64_t>(ref.row) << 32) | static_cast<uint32_t>(ref.col);
}

std::pair<int, int> norm(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

std::string comp_description(const SemiTripartiteInstance& inst, int comp) {
  std::string out = "component {";
  bool first = true;
  for (int s : inst.comps[comp]) {
    if (!first) out += ",";
    first = false;
    out += "super" + std::to_string(s);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Reduction pipeline (steps M1-M6)
// ---------------------------------------------------------------------------

struct LinkedList {
  // Intrusive doubly linked list over vertex ids.
  std::vector<int> next, prev;
  int head = -1;

  explicit LinkedList(int n) : next(n, -1), prev(n, -1) {}

  void push(int v) {
    next[v] = head;
    prev[v] = -1;
    if (head >= 0) prev[head] = v;
    head = v;
  }
  void remove(int v) {
    if (prev[v] >= 0)
      next[prev[v]] = next[v];
    else
      head = next[v];
    if (next[v] >= 0) prev[next[v]] = prev[v];
  }
};

}  // namespace

SemiTripartiteInstance reduce_to_semitripartite(const MixedGraph& g,
                                                const std::vector<CellRef>& q) {
  for (const GraphEdge& e : g.edges)
    if (e.dir != Orientation::undirected)
      throw std::invalid_argument(
          "suppressed graph is not all-undirected; use the general solver");

  std::unordered_map<int64_t, int> idx;
  idx.reserve(g.edges.size() * 2);
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
    idx[cell_key(g.edges[i].cell)] = i;
  std::vector<char> in_q(g.edges.size(), 0);
  for (CellRef ref : q) {
    auto it = idx.find(cell_key(ref));
    if (it == idx.end())
      throw std::invalid_argument("q contains a cell that is not suppressed");
    in_q[it->second] = 1;
  }

  int n = g.n_vertices();
  Partition comp = connected_components(g);
  int n_comps = group_count(comp);

  // M2: maximal forests from suppressed edges outside q.
  DisjointSets ds(n);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    if (in_q[e]) continue;
    ds.unite(g.row_vertex(g.edges[e].row), g.col_vertex(g.edges[e].col));
  }

  // M3: extend each forest with edges of the component's bipartite
  // complement. The complement is swept through linked lists of unreached
  // vertices instead of being materialized.
  ArcAdjacency blind = build_blind_adjacency(g);
  std::vector<std::vector<int>> comp_rows(n_comps), comp_cols(n_comps);
  for (int v = 0; v < n; ++v) {
    if (g.is_row_vertex(v))
      comp_rows[comp[v]].push_back(v);
    else
      comp_cols[comp[v]].push_back(v);
  }

  std::vector<CellRef> complement_cells;
  std::vector<int> mark(n, 0);
  std::vector<char> swept(n, 0);
  int epoch = 0;
  std::vector<int> queue;
  LinkedList rows_left(n), cols_left(n);

  for (int ci = 0; ci < n_comps; ++ci) {
    // Lists are pushed in reverse so traversal runs in ascending vertex id.
    for (auto it = comp_rows[ci].rbegin(); it != comp_rows[ci].rend(); ++it)
      rows_left.push(*it);
    for (auto it = comp_cols[ci].rbegin(); it != comp_cols[ci].rend(); ++it)
      cols_left.push(*it);

    auto sweep_from = [&](int start) {
      queue.clear();
      queue.push_back(start);
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        ++epoch;
        for (int a = blind.head[u]; a < blind.head[u + 1]; ++a) mark[blind.to[a]] = epoch;
        LinkedList& opposite = g.is_row_vertex(u) ? cols_left : rows_left;
        int w = opposite.head;
        while (w >= 0) {
          int nxt = opposite.next[w];
          if (mark[w] != epoch) {
            // (u, w) is a complement edge: the pair is inside the component
            // yet not a suppressed cell.
            opposite.remove(w);
            swept[w] = 1;
            queue.push_back(w);
            if (ds.unite(u, w)) {
              int rv = g.is_row_vertex(u) ? u : w;
              int cv = g.is_row_vertex(u) ? w : u;
              complement_cells.push_back({rv, cv - g.n_rows});
            }
          }
          w = nxt;
        }
      }
    };

    for (int v : comp_rows[ci]) {
      if (swept[v]) continue;
      rows_left.remove(v);
      swept[v] = 1;
      sweep_from(v);
    }
    for (int v : comp_cols[ci]) {
      if (swept[v]) continue;
      cols_left.remove(v);
      swept[v] = 1;
      sweep_from(v);
    }
  }

  // M4: contract the forest trees.
  std::unordered_map<int, std::vector<int>> classes;
  for (int v = 0; v < n; ++v) classes[ds.find(v)].push_back(v);
  std::vector<std::vector<int>> groups;
  for (int v = 0; v < n; ++v) {
    auto it = classes.find(ds.find(v));
    if (it != classes.end() && it->second.front() == v && it->second.size() >= 2)
      groups.push_back(it->second);
  }
  ContractedGraph contracted = contract(g, groups, /*require_within_component=*/false);

  // M5 + M6: contracted components and vertex classification.
  SemiTripartiteInstance inst;
  inst.n_rows = g.n_rows;
  inst.n_cols = g.n_cols;
  inst.supers = contracted.supers;
  inst.comp_of.resize(inst.n_supers());
  inst.comps.assign(n_comps, {});
  inst.cls.resize(inst.n_supers());
  for (int s = 0; s < inst.n_supers(); ++s) {
    const auto& sv = inst.supers[s];
    int first_vertex = sv.rows.empty() ? g.col_vertex(sv.cols.front()) : sv.rows.front();
    int ci = comp[first_vertex];
    for (int r : sv.rows)
      if (comp[r] != ci) throw std::logic_error("contraction merged two components");
    for (int c : sv.cols)
      if (comp[g.col_vertex(c)] != ci) throw std::logic_error("contraction merged two components");
    inst.comp_of[s] = ci;
    inst.comps[ci].push_back(s);
    size_t members = sv.rows.size() + sv.cols.size();
    if (members >= 2) {
      if (sv.rows.empty() || sv.cols.empty())
        throw std::logic_error("contracted tree missing one side");
      inst.cls[s] = SuperClass::vab;
    } else {
      inst.cls[s] = sv.rows.empty() ? SuperClass::vb : SuperClass::va;
    }
  }

  std::sort(complement_cells.begin(), complement_cells.end());
  inst.complement_cells = std::move(complement_cells);
  for (const GraphEdge& e : g.edges) inst.suppressed.push_back(e.cell);
  std::sort(inst.suppressed.begin(), inst.suppressed.end());
  return inst;
}

SemiTripartiteInstance reduce_to_semitripartite(const Table& t,
                                                const std::vector<CellRef>& q) {
  MixedGraph total = total_graph(t);
  for (const GraphEdge& e : total.edges)
    if (e.dir != Orientation::undirected)
      throw std::invalid_argument("total graph is not all-undirected at " +
                                  t.cell_name(e.cell) + "; use the general solver");
  return reduce_to_semitripartite(suppressed_graph(t), q);
}

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------

namespace {

struct CompStats {
  std::vector<int> good;      // component ids, canonical order
  std::vector<int> bad;
  std::vector<int> singles;   // super ids forming singleton components
  int d = 0;
};

CompStats classify(const SemiTripartiteInstance& inst) {
  CompStats st;
  for (int c = 0; c < static_cast<int>(inst.comps.size()); ++c) {
    const auto& members = inst.comps[c];
    if (members.empty()) continue;
    if (members.size() == 1) {
      st.singles.push_back(members.front());
      continue;
    }
    st.d += static_cast<int>(members.size());
    bool has_ab = false;
    for (int s : members) has_ab |= (inst.cls[s] == SuperClass::vab);
    (has_ab ? st.good : st.bad).push_back(c);
  }
  return st;
}

// Structural sanity of the instance itself. Contracted components of a
// bipartite graph always carry both sides (counting a mixed super-vertex as
// both); the case analysis leans on that, so instances violating it are
// rejected rather than mis-solved.
void validate_instance(const SemiTripartiteInstance& inst) {
  for (int s = 0; s < inst.n_supers(); ++s) {
    const auto& sv = inst.supers[s];
    bool ok = true;
    switch (inst.cls[s]) {
      case SuperClass::va: ok = sv.rows.size() == 1 && sv.cols.empty(); break;
      case SuperClass::vb: ok = sv.cols.size() == 1 && sv.rows.empty(); break;
      case SuperClass::vab: ok = !sv.rows.empty() && !sv.cols.empty(); break;
    }
    if (!ok)
      throw std::invalid_argument("super-vertex " + std::to_string(s) +
                                  " has members inconsistent with its class");
    if (inst.comp_of[s] < 0 || inst.comp_of[s] >= static_cast<int>(inst.comps.size()))
      throw std::invalid_argument("super-vertex with out-of-range component");
  }
  for (const auto& members : inst.comps) {
    if (members.size() < 2) continue;
    bool has_row = false, has_col = false;
    for (int s : members) {
      has_row |= inst.cls[s] != SuperClass::vb;
      has_col |= inst.cls[s] != SuperClass::va;
    }
    if (!has_row || !has_col)
      throw std::invalid_argument(
          "multi-vertex component misses one table side; no bipartite "
          "contraction produces this");
  }
}

void validate_solution(const SemiTripartiteInstance& inst,
                       const std::vector<std::pair<int, int>>& edges) {
  DisjointSets ds(inst.n_supers());
  for (auto [u, v] : edges) {
    if (u == v || !inst.allowed_edge(u, v))
      throw std::logic_error("solver produced a forbidden edge");
    if (!ds.unite(u, v)) throw std::logic_error("solver produced a cycle");
  }
  for (const auto& members : inst.comps) {
    if (members.size() < 2) continue;
    for (int s : members)
      if (ds.find(s) != ds.find(members.front()))
        throw std::logic_error("solver left a component disconnected");
  }
}

int ab_member(const SemiTripartiteInstance& inst, int comp) {
  for (int s : inst.comps[comp])
    if (inst.cls[s] == SuperClass::vab) return s;
  return -1;
}

int side_member(const SemiTripartiteInstance& inst, int comp, SuperClass side) {
  for (int s : inst.comps[comp])
    if (inst.cls[s] == side) return s;
  return -1;
}

// Paper construction joining one good component with one bad one into a tree.
void pair_good_bad(const SemiTripartiteInstance& inst, int good, int bad,
                   std::vector<std::pair<int, int>>& edges) {
  int u = ab_member(inst, good);
  int v1 = side_member(inst, bad, SuperClass::va);
  int v2 = side_member(inst, bad, SuperClass::vb);
  if (u < 0 || v1 < 0 || v2 < 0)
    throw std::logic_error("pairing needs an AB vertex and both bad-side vertices");
  for (int x : inst.comps[good]) {
    if (x == u) continue;
    if (inst.cls[x] == SuperClass::vb)
      edges.push_back(norm(v1, x));
    else
      edges.push_back(norm(v2, x));
  }
  for (int z : inst.comps[bad]) edges.push_back(norm(u, z));
}

// Paper construction joining two good components into a tree.
void pair_good_good(const SemiTripartiteInstance& inst, int g1, int g2,
                    std::vector<std::pair<int, int>>& edges) {
  int u1 = ab_member(inst, g1);
  int u2 = ab_member(inst, g2);
  edges.push_back(norm(u1, u2));
  for (int x : inst.comps[g1])
    if (x != u1) edges.push_back(norm(x, u2));
  for (int y : inst.comps[g2])
    if (y != u2) edges.push_back(norm(y, u1));
}

SolveOutcome solve_paper(const SemiTripartiteInstance& inst) {
  CompStats st = classify(inst);
  int w_g = static_cast<int>(st.good.size());
  int w_b = static_cast<int>(st.bad.size());

  std::vector<int> all_ab;
  for (int s = 0; s < inst.n_supers(); ++s)
    if (inst.cls[s] == SuperClass::vab) all_ab.push_back(s);

  std::vector<std::pair<int, int>> edges;
  auto finish = [&]() {
    std::sort(edges.begin(), edges.end());
    validate_solution(inst, edges);
    SemiTripartiteSolution sol;
    sol.edges = std::move(edges);
    sol.mode = SolveMode::paper;
    sol.w_good = w_g;
    sol.w_bad = w_b;
    sol.d = st.d;
    return SolveOutcome{std::move(sol), {}};
  };
  auto infeasible = [&](const std::string& why) { return SolveOutcome{std::nullopt, why}; };

  if (w_g == 0) {
    if (w_b == 0) return finish();
    if (all_ab.empty())
      return infeasible("no mixed super-vertex exists to anchor the bad components (" +
                        comp_description(inst, st.bad.front()) + " cannot be connected)");
    // An AB vertex outside every bad component; with no good components it
    // is necessarily a singleton.
    int u = all_ab.front();
    for (int bc : st.bad)
      for (int z : inst.comps[bc]) edges.push_back(norm(u, z));
    return finish();
  }

  if (w_g == 1) {
    int j = st.good.front();
    if (w_b > 0) {
      pair_good_bad(inst, j, st.bad.front(), edges);
      int u = ab_member(inst, j);
      for (size_t k = 1; k < st.bad.size(); ++k)
        for (int z : inst.comps[st.bad[k]]) edges.push_back(norm(u, z));
      return finish();
    }
    // w_b == 0: connect the single good component through external hubs.
    std::vector<int> external_ab;
    for (int s : all_ab)
      if (inst.comp_of[s] != j) external_ab.push_back(s);
    if (!external_ab.empty()) {
      int w = external_ab.front();
      for (int x : inst.comps[j]) edges.push_back(norm(x, w));
      return finish();
    }
    // All AB vertices live inside the component: hub on external single
    // row/column vertices, one per populated side.
    bool has_a = side_member(inst, j, SuperClass::va) >= 0;
    bool has_b = side_member(inst, j, SuperClass::vb) >= 0;
    int ext_a = -1, ext_b = -1;
    for (int s : st.singles) {
      if (inst.cls[s] == SuperClass::va && ext_a < 0) ext_a = s;
      if (inst.cls[s] == SuperClass::vb && ext_b < 0) ext_b = s;
    }
    if (has_a && ext_b < 0)
      return infeasible("row super-vertices of " + comp_description(inst, j) +
                        " have no external column vertex to attach to");
    if (has_b && ext_a < 0)
      return infeasible("column super-vertices of " + comp_description(inst, j) +
                        " have no external row vertex to attach to");
    if (!has_a && !has_b) {
      // Only AB members; any single external vertex works as the hub.
      int hub = ext_a >= 0 ? (ext_b >= 0 ? std::min(ext_a, ext_b) : ext_a) : ext_b;
      if (hub < 0)
        return infeasible(comp_description(inst, j) +
                          " has no external vertex at all to attach to");
      for (int x : inst.comps[j]) edges.push_back(norm(x, hub));
      return finish();
    }
    int anchor = -1;  // hub that also carries the AB members
    if (has_a) {
      for (int x : inst.comps[j])
        if (inst.cls[x] == SuperClass::va) edges.push_back(norm(x, ext_b));
      anchor = ext_b;
    }
    if (has_b) {
      for (int x : inst.comps[j])
        if (inst.cls[x] == SuperClass::vb) edges.push_back(norm(x, ext_a));
      anchor = ext_a;
    }
    if (has_a && has_b) {
      edges.push_back(norm(ext_a, ext_b));
      anchor = ext_a;
    }
    for (int x : inst.comps[j])
      if (inst.cls[x] == SuperClass::vab) edges.push_back(norm(x, anchor));
    return finish();
  }

  // w_g >= 2: pair good components with bad ones while possible, then pair
  // leftover good components among themselves.
  size_t pairs = std::min(st.good.size(), st.bad.size());
  for (size_t i = 0; i < pairs; ++i) pair_good_bad(inst, st.good[i], st.bad[i], edges);
  if (st.bad.size() > pairs) {
    int u = ab_member(inst, st.good.front());
    for (size_t k = pairs; k < st.bad.size(); ++k)
      for (int z : inst.comps[st.bad[k]]) edges.push_back(norm(u, z));
  } else if (st.good.size() > pairs) {
    size_t i = pairs;
    for (; i + 1 < st.good.size(); i += 2)
      pair_good_good(inst, st.good[i], st.good[i + 1], edges);
    if (i < st.good.size()) {
      int other = st.good.front() == st.good[i] ? st.good[1] : st.good.front();
      int u = ab_member(inst, other);
      for (int x : inst.comps[st.good[i]]) edges.push_back(norm(x, u));
    }
  }
  return finish();
}

// --- exact solver ----------------------------------------------------------

struct ExactContext {
  const SemiTripartiteInstance& inst;
  CompStats st;
  std::vector<int> multi;                  // component ids with >= 2 supers
  std::vector<std::vector<int>> mverts;    // supers per multi comp
  std::vector<int> singles;                // mediator supers
  int total_multi_verts = 0;

  // memo: block bitmask -> minimal feasible mediator masks (sorted by
  // popcount, then value)
  std::map<uint32_t, std::vector<uint32_t>> minimal_masks;

  explicit ExactContext(const SemiTripartiteInstance& i) : inst(i), st(classify(i)) {
    for (int c = 0; c < static_cast<int>(inst.comps.size()); ++c)
      if (inst.comps[c].size() >= 2) {
        multi.push_back(c);
        mverts.push_back(inst.comps[c]);
        total_multi_verts += static_cast<int>(inst.comps[c].size());
      }
    singles = st.singles;
  }

  std::vector<int> block_vertices(uint32_t block, uint32_t med_mask) const {
    std::vector<int> verts;
    for (size_t i = 0; i < multi.size(); ++i)
      if (block & (1u << i)) verts.insert(verts.end(), mverts[i].begin(), mverts[i].end());
    for (size_t i = 0; i < singles.size(); ++i)
      if (med_mask & (1u << i)) verts.push_back(singles[i]);
    return verts;
  }

  bool connected(const std::vector<int>& verts) const {
    if (verts.empty()) return true;
    std::vector<char> in(inst.n_supers(), 0), seen(inst.n_supers(), 0);
    for (int v : verts) in[v] = 1;
    std::vector<int> queue{verts.front()};
    seen[verts.front()] = 1;
    size_t reached = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int v : verts) {
        if (seen[v] || !inst.allowed_edge(u, v)) continue;
        seen[v] = 1;
        ++reached;
        queue.push_back(v);
      }
    }
    return reached == verts.size();
  }

  const std::vector<uint32_t>& masks_for(uint32_t block) {
    auto it = minimal_masks.find(block);
    if (it != minimal_masks.end()) return it->second;
    // Ascending popcount with superset pruning yields exactly the minimal
    // feasible mediator sets; any feasible assignment shrinks blockwise to
    // one of them without breaking disjointness.
    std::vector<uint32_t> found;
    int s = static_cast<int>(singles.size());
    std::vector<uint32_t> all;
    all.reserve(1u << s);
    for (uint32_t mask = 0; mask < (1u << s); ++mask) all.push_back(mask);
    std::sort(all.begin(), all.end(), [](uint32_t a, uint32_t b) {
      int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    for (uint32_t mask : all) {
      bool dominated = false;
      for (uint32_t have : found)
        if ((have & mask) == have) {
          dominated = true;
          break;
        }
      if (dominated) continue;
      if (connected(block_vertices(block, mask))) found.push_back(mask);
    }
    return minimal_masks.emplace(block, std::move(found)).first->second;
  }
};

// Deterministic spanning tree of the given vertices over allowed edges:
// breadth-first from the smallest vertex, neighbors in ascending order.
void spanning_tree_edges(const SemiTripartiteInstance& inst, std::vector<int> verts,
                         std::vector<std::pair<int, int>>& out) {
  if (verts.size() <= 1) return;
  std::sort(verts.begin(), verts.end());
  std::vector<char> seen(inst.n_supers(), 0);
  std::vector<int> queue{verts.front()};
  seen[verts.front()] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (int v : verts) {
      if (seen[v] || !inst.allowed_edge(u, v)) continue;
      seen[v] = 1;
      queue.push_back(v);
      out.push_back(norm(u, v));
    }
  }
  for (int v : verts)
    if (!seen[v]) throw std::logic_error("spanning tree construction on a disconnected block");
}

SolveOutcome solve_exact(const SemiTripartiteInstance& inst) {
  CompStats st = classify(inst);
  ExactContext ctx(inst);
  int n_multi = static_cast<int>(ctx.multi.size());

  SemiTripartiteSolution best;
  best.mode = SolveMode::exact;
  best.w_good = static_cast<int>(st.good.size());
  best.w_bad = static_cast<int>(st.bad.size());
  best.d = st.d;

  if (n_multi == 0) return SolveOutcome{best, {}};

  if (n_multi > 10 || ctx.singles.size() > 16 || ctx.total_multi_verts > 26)
    throw std::runtime_error("exact mode supports desk-scale instances only");

  // Feasibility: each component's supers must share one connected piece of
  // the full allowed graph over multi vertices plus all mediators.
  {
    std::vector<int> all = ctx.block_vertices((1u << n_multi) - 1, (1u << ctx.singles.size()) - 1);
    DisjointSets ds(inst.n_supers());
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i + 1; j < all.size(); ++j)
        if (inst.allowed_edge(all[i], all[j])) ds.unite(all[i], all[j]);
    for (int mi = 0; mi < n_multi; ++mi) {
      const auto& verts = ctx.mverts[mi];
      for (int v : verts)
        if (ds.find(v) != ds.find(verts.front()))
          return SolveOutcome{std::nullopt,
                              comp_description(inst, ctx.multi[mi]) +
                                  " cannot be connected by any semi-tripartite forest"};
    }
  }

  int best_cost = -1;
  std::vector<std::pair<uint32_t, uint32_t>> best_blocks;  // (block, mediators)

  // Seed the search with the paper-mode construction when feasible.
  SolveOutcome paper = solve_paper(inst);
  if (paper.solution) {
    best_cost = static_cast<int>(paper.solution->edges.size());
    best.edges = paper.solution->edges;
  }

  // Enumerate set partitions of the multi components (restricted growth).
  std::vector<uint32_t> blocks;
  std::vector<std::pair<uint32_t, uint32_t>> chosen;

  // Minimum mediators a block needs in isolation; used for pruning.
  auto min_need = [&](uint32_t block) -> int {
    const auto& masks = ctx.masks_for(block);
    if (masks.empty()) return -1;  // block infeasible with any mediators
    return __builtin_popcount(masks.front());
  };

  std::function<void(size_t, int, uint32_t)> assign_mediators =
      [&](size_t bi, int cost_so_far, uint32_t used) {
        if (best_cost >= 0 && cost_so_far >= best_cost) return;
        if (bi == blocks.size()) {
          if (best_cost < 0 || cost_so_far < best_cost) {
            best_cost = cost_so_far;
            best_blocks.assign(chosen.begin(), chosen.end());
          }
          return;
        }
        for (uint32_t mask : ctx.masks_for(blocks[bi])) {
          if (mask & used) continue;
          chosen.emplace_back(blocks[bi], mask);
          assign_mediators(bi + 1, cost_so_far + __builtin_popcount(mask), used | mask);
          chosen.pop_back();
        }
      };

  std::function<void(int)> enumerate = [&](int comp_idx) {
    if (comp_idx == n_multi) {
      // cost = (vertices touched) - (#trees) + (mediators)
      int base = ctx.total_multi_verts - static_cast<int>(blocks.size());
      if (best_cost >= 0 && base >= best_cost) return;
      int bound = base;
      for (uint32_t b : blocks) {
        int need = min_need(b);
        if (need < 0) return;  // some block can never connect
        bound += need;
      }
      if (best_cost >= 0 && bound >= best_cost) return;
      chosen.clear();
      assign_mediators(0, base, 0);
      return;
    }
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
      blocks[bi] |= (1u << comp_idx);
      enumerate(comp_idx + 1);
      blocks[bi] &= ~(1u << comp_idx);
    }
    blocks.push_back(1u << comp_idx);
    enumerate(comp_idx + 1);
    blocks.pop_back();
  };
  enumerate(0);

  if (best_cost < 0)
    return SolveOutcome{std::nullopt, "no semi-tripartite forest connects the components"};

  if (!best_blocks.empty()) {
    std::vector<std::pair<int, int>> edges;
    for (auto [block, med] : best_blocks)
      spanning_tree_edges(inst, ctx.block_vertices(block, med), edges);
    std::sort(edges.begin(), edges.end());
    best.edges = std::move(edges);
  }
  std::sort(best.edges.begin(), best.edges.end());
  validate_solution(inst, best.edges);
  if (static_cast<int>(best.edges.size()) != best_cost)
    throw std::logic_error("exact solver size accounting mismatch");
  return SolveOutcome{best, {}};
}

}  // namespace

SolveOutcome solve_semitripartite(const SemiTripartiteInstance& inst, SolveMode mode) {
  validate_instance(inst);
  return mode == SolveMode::paper ? solve_paper(inst) : solve_exact(inst);
}

std::vector<CellRef> lift_solution(const SemiTripartiteInstance& inst,
                                   const SemiTripartiteSolution& sol) {
  std::vector<CellRef> cells = inst.complement_cells;
  for (auto [u, v] : sol.edges) {
    const auto& su = inst.supers[u];
    const auto& sv = inst.supers[v];
    CellRef cell;
    if (!su.rows.empty() && !sv.cols.empty())
      cell = {su.rows.front(), sv.cols.front()};
    else if (!sv.rows.empty() && !su.cols.empty())
      cell = {sv.rows.front(), su.cols.front()};
    else
      throw std::logic_error("solution edge between two same-side super-vertices");
    if (std::binary_search(inst.suppressed.begin(), inst.suppressed.end(), cell))
      throw std::logic_error("lifted cell is already suppressed");
    cells.push_back(cell);
  }
  std::sort(cells.begin(), cells.end());
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
    throw std::logic_error("lifted plan repeats a cell");
  return cells;
}

namespace {

SuppressionPlan assemble_plan(const SemiTripartiteSolution& sol, std::vector<CellRef> cells,
                              ProtectionReport verification) {
  if (!verification.totally_protected)
    throw std::logic_error("suppression plan failed verification");
  SuppressionPlan plan;
  plan.cells = std::move(cells);
  plan.mode = sol.mode;
  plan.verification = std::move(verification);
  plan.w_good = sol.w_good;
  plan.w_bad = sol.w_bad;
  plan.d = sol.d;
  return plan;
}

}  // namespace

PlanOutcome optimal_protection_set(const MixedGraph& suppressed,
                                   const std::vector<CellRef>& q, SolveMode mode) {
  SemiTripartiteInstance inst = reduce_to_semitripartite(suppressed, q);
  SolveOutcome out = solve_semitripartite(inst, mode);
  if (!out.solution) return PlanOutcome{std::nullopt, out.infeasible_reason};
  std::vector<CellRef> cells = lift_solution(inst, *out.solution);

  MixedGraph augmented = suppressed;
  for (CellRef ref : cells)
    augmented.edges.push_back({ref.row, ref.col, Orientation::undirected, ref});
  ProtectionReport verification = test_total_protection(augmented, q);
  return PlanOutcome{assemble_plan(*out.solution, std::move(cells), std::move(verification)),
                     {}};
}

PlanOutcome optimal_protection_set(const Table& t, const std::vector<CellRef>& q,
                                   SolveMode mode) {
  for (CellRef ref : q) {
    if (!t.in_range(ref)) throw std::invalid_argument("q cell out of range");
    if (!t.cell(ref).suppressed)
      throw std::invalid_argument("q contains a non-suppressed cell " + t.cell_name(ref));
  }
  SemiTripartiteInstance inst = reduce_to_semitripartite(t, q);
  SolveOutcome out = solve_semitripartite(inst, mode);
  if (!out.solution) return PlanOutcome{std::nullopt, out.infeasible_reason};
  std::vector<CellRef> cells = lift_solution(inst, *out.solution);
  ProtectionReport verification = test_total_protection(with_suppressed(t, cells), q);
  return PlanOutcome{assemble_plan(*out.solution, std::move(cells), std::move(verification)),
                     {}};
}

nlohmann::json plan_to_json(const SuppressionPlan& plan, const MixedGraph& g) {
  nlohmann::json out;
  out["mode"] = plan.mode == SolveMode::paper ? "paper" : "exact";
  nlohmann::json cells = nlohmann::json::array();
  for (CellRef ref : plan.cells)
    cells.push_back({{"row", g.row_labels[ref.row]}, {"col", g.col_labels[ref.col]}});
  out["cells"] = std::move(cells);
  out["size"] = plan.cells.size();
  out["verified"] = plan.verification.totally_protected;
  out["stats"] = {{"w_g", plan.w_good}, {"w_b", plan.w_bad}, {"d", plan.d}};
  return out;
}

}  // namespace tabprot
