#include "tabprot/oracle.hpp"

#include "tabprot/detection.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace tabprot {

std::optional<SuppressionPlan> brute_force_min_protection(const Table& t,
                                                          const std::vector<CellRef>& q) {
  for (CellRef ref : q) {
    if (!t.in_range(ref)) throw std::invalid_argument("q cell out of range");
    if (!t.cell(ref).suppressed)
      throw std::invalid_argument("q contains a non-suppressed cell " + t.cell_name(ref));
  }
  std::vector<CellRef> published;
  for (int r = 0; r < t.rows(); ++r)
    for (int c = 0; c < t.cols(); ++c)
      if (!t.cell(r, c).suppressed) published.push_back({r, c});
  if (published.size() > 20)
    throw std::runtime_error("brute force supports desk-scale instances only");

  int n = static_cast<int>(published.size());
  std::vector<int> pick;
  std::vector<CellRef> subset;
  for (int size = 0; size <= n; ++size) {
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
      int i = size - 1;
      while (i >= 0 && pick[i] == n - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

namespace {

// mt19937_64 output is pinned by the standard; distributions are not, so
// ranges are reduced by hand to keep generated fixtures reproducible.
uint64_t next_below(std::mt19937_64& rng, uint64_t bound) { return rng() % bound; }

bool chance(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) / static_cast<double>(1ull << 53) < p;
}

}  // namespace

Table generate_table(const GeneratorConfig& cfg) {
  if (cfg.rows <= 0 || cfg.cols <= 0)
    throw std::invalid_argument("generator: dimensions must be positive");
  if (cfg.suppression_density < 0.0 || cfg.suppression_density > 1.0)
    throw std::invalid_argument("generator: suppression density outside [0,1]");
  if (cfg.boundary_density < 0.0 || cfg.boundary_density > 1.0)
    throw std::invalid_argument("generator: boundary density outside [0,1]");
  if (cfg.value_max - cfg.value_min < 2)
    throw std::invalid_argument("generator: value range needs at least one interior value");

  std::mt19937_64 rng(cfg.seed);
  Table t;
  for (int r = 0; r < cfg.rows; ++r) t.row_labels.push_back(std::to_string(r + 1));
  for (int c = 0; c < cfg.cols; ++c)
    t.col_labels.push_back(std::string(1, static_cast<char>('a' + c % 26)) +
                           (c >= 26 ? std::to_string(c / 26) : ""));
  t.cells.assign(static_cast<size_t>(cfg.rows) * cfg.cols, Cell{});

  long interior = cfg.value_max - cfg.value_min - 1;
  size_t forced_at_bound = t.cells.size();  // sentinel: none forced
  if (cfg.mode == GenMode::mixed && cfg.boundary_density > 0.0)
    forced_at_bound = next_below(rng, t.cells.size());

  for (size_t i = 0; i < t.cells.size(); ++i) {
    Cell& cell = t.cells[i];
    cell.lower = Bound::finite(Value(cfg.value_min));
    cell.upper = Bound::finite(Value(cfg.value_max));
    bool at_bound = cfg.mode == GenMode::mixed &&
                    (i == forced_at_bound || chance(rng, cfg.boundary_density));
    if (at_bound) {
      cell.value = Value((rng() & 1) ? cfg.value_max : cfg.value_min);
    } else {
      cell.value = Value(cfg.value_min + 1 + static_cast<long>(next_below(rng, interior)));
    }
    cell.suppressed = chance(rng, cfg.suppression_density);
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

MixedGraph generate_suppressed_graph(int n_rows, int n_cols, int m, uint64_t seed) {
  if (n_rows <= 0 || n_cols <= 0) throw std::invalid_argument("generator: empty side");
  if (static_cast<long long>(m) > static_cast<long long>(n_rows) * n_cols)
    throw std::invalid_argument("generator: more edges than cells");
  std::mt19937_64 rng(seed);
  MixedGraph g;
  g.n_rows = n_rows;
  g.n_cols = n_cols;
  for (int r = 0; r < n_rows; ++r) g.row_labels.push_back("r" + std::to_string(r));
  for (int c = 0; c < n_cols; ++c) g.col_labels.push_back("c" + std::to_string(c));

  std::vector<char> used(static_cast<size_t>(n_rows) * n_cols, 0);
  // A scattered spanning path first, so large instances are mostly one
  // component, then random fill.
  int base = std::min(n_rows, n_cols);
  int placed = 0;
  for (int i = 0; i + 1 < 2 * base && placed < m; ++i) {
    int r = (i + 1) / 2, c = i / 2;
    size_t key = static_cast<size_t>(r) * n_cols + c;
    if (used[key]) continue;
    used[key] = 1;
    g.edges.push_back({r, c, Orientation::undirected, CellRef{r, c}});
    ++placed;
  }
  while (placed < m) {
    int r = static_cast<int>(next_below(rng, n_rows));
    int c = static_cast<int>(next_below(rng, n_cols));
    size_t key = static_cast<size_t>(r) * n_cols + c;
    if (used[key]) continue;
    used[key] = 1;
    g.edges.push_back({r, c, Orientation::undirected, CellRef{r, c}});
    ++placed;
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](const GraphEdge& a, const GraphEdge& b) { return a.cell < b.cell; });
  return g;
}

void exhaustive_small_instances(
    int max_rows, int max_cols,
    const std::function<void(const Table&, const std::vector<CellRef>&)>& fn,
    TemplateKind kind) {
  if (max_rows <= 0 || max_cols <= 0) throw std::invalid_argument("empty enumeration");
  if (max_rows * max_cols > 9)
    throw std::invalid_argument("exhaustive enumeration supports up to 9 cells");

  for (int r = 1; r <= max_rows; ++r) {
    for (int c = 1; c <= max_cols; ++c) {
      int cells = r * c;
      Table base;
      for (int i = 0; i < r; ++i) base.row_labels.push_back(std::to_string(i + 1));
      for (int j = 0; j < c; ++j)
        base.col_labels.push_back(std::string(1, static_cast<char>('a' + j)));
      base.cells.assign(cells, Cell{});
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < c; ++j) {
          Cell& cell = base.cell(i, j);
          cell.lower = Bound::finite(0);
          cell.upper = Bound::finite(2);
          cell.value = kind == TemplateKind::interior ? Value(1) : Value((i + j) % 3);
        }
      }

      for (uint32_t mask = 0; mask < (1u << cells); ++mask) {
        Table t = base;
        std::vector<CellRef> suppressed;
        for (int i = 0; i < cells; ++i) {
          if (mask & (1u << i)) {
            t.cells[i].suppressed = true;
            suppressed.push_back({i / c, i % c});
          }
        }
        t.row_sums.clear();
        t.col_sums.clear();
        for (int i = 0; i < r; ++i) {
          Value s = 0;
          for (int j = 0; j < c; ++j) s += *t.cell(i, j).value;
          t.row_sums.push_back(s);
        }
        for (int j = 0; j < c; ++j) {
          Value s = 0;
          for (int i = 0; i < r; ++i) s += *t.cell(i, j).value;
          t.col_sums.push_back(s);
        }

        int k = static_cast<int>(suppressed.size());
        for (uint32_t qmask = 0; qmask < (1u << k); ++qmask) {
          std::vector<CellRef> q;
          for (int i = 0; i < k; ++i)
            if (qmask & (1u << i)) q.push_back(suppressed[i]);
          fn(t, q);
        }
      }
    }
  }
}

}  // namespace tabprot
