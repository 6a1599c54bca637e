#include "tabprot/table.hpp"

#include <stdexcept>
#include <unordered_map>

namespace tabprot {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("table: " + msg);
}

Value sum_row(const Table& t, int r) {
  Value s = 0;
  for (int c = 0; c < t.cols(); ++c) s += *t.cell(r, c).value;
  return s;
}

Value sum_col(const Table& t, int c) {
  Value s = 0;
  for (int r = 0; r < t.rows(); ++r) s += *t.cell(r, c).value;
  return s;
}

}  // namespace

Bound Bound::parse(const std::string& text) {
  if (text == "-inf") return neg_infinity();
  if (text == "inf" || text == "+inf") return pos_infinity();
  return finite(parse_value(text));
}

std::string Bound::render() const {
  switch (kind) {
    case Kind::neg_inf:
      return "-inf";
    case Kind::pos_inf:
      return "inf";
    case Kind::finite:
      return render_value(value);
  }
  return {};
}

std::vector<CellRef> Table::suppressed_cells() const {
  std::vector<CellRef> out;
  for (int r = 0; r < rows(); ++r)
    for (int c = 0; c < cols(); ++c)
      if (cell(r, c).suppressed) out.push_back({r, c});
  return out;
}

bool Table::complete() const {
  for (const Cell& c : cells)
    if (!c.value) return false;
  return true;
}

int Table::find_row(const std::string& label) const {
  for (int r = 0; r < rows(); ++r)
    if (row_labels[r] == label) return r;
  return -1;
}

int Table::find_col(const std::string& label) const {
  for (int c = 0; c < cols(); ++c)
    if (col_labels[c] == label) return c;
  return -1;
}

std::string Table::cell_name(CellRef ref) const {
  return "(" + row_labels[ref.row] + "," + col_labels[ref.col] + ")";
}

Table parse_table_text(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  return parse_table(doc);
}

Table parse_table(const nlohmann::json& doc) {
  if (!doc.is_object()) fail("document is not an object");
  if (!doc.contains("rows") || !doc.contains("cols") || !doc.contains("cells"))
    fail("document needs rows, cols and cells");

  Table t;
  for (const auto& r : doc.at("rows")) t.row_labels.push_back(r.get<std::string>());
  for (const auto& c : doc.at("cols")) t.col_labels.push_back(c.get<std::string>());
  if (t.row_labels.empty() || t.col_labels.empty()) fail("empty row or column list");
  for (int r = 0; r < t.rows(); ++r)
    for (int r2 = r + 1; r2 < t.rows(); ++r2)
      if (t.row_labels[r] == t.row_labels[r2]) fail("duplicate row label " + t.row_labels[r]);
  for (int c = 0; c < t.cols(); ++c)
    for (int c2 = c + 1; c2 < t.cols(); ++c2)
      if (t.col_labels[c] == t.col_labels[c2]) fail("duplicate column label " + t.col_labels[c]);

  t.cells.assign(static_cast<size_t>(t.rows()) * t.cols(), Cell{});
  std::vector<bool> seen(t.cells.size(), false);

  for (const auto& entry : doc.at("cells")) {
    int r = t.find_row(entry.at("row").get<std::string>());
    int c = t.find_col(entry.at("col").get<std::string>());
    if (r < 0 || c < 0) fail("cell references unknown row or column");
    size_t idx = static_cast<size_t>(r) * t.cols() + c;
    if (seen[idx]) fail("duplicate cell entry at " + t.cell_name({r, c}));
    seen[idx] = true;

    Cell cell;
    if (entry.contains("value") && !entry.at("value").is_null())
      cell.value = parse_value(entry.at("value").get<std::string>());
    if (entry.contains("lower")) cell.lower = Bound::parse(entry.at("lower").get<std::string>());
    if (entry.contains("upper")) cell.upper = Bound::parse(entry.at("upper").get<std::string>());
    if (entry.contains("suppressed"))
      cell.suppressed = entry.at("suppressed").get<bool>();
    else if (!cell.value)
      fail("cell without value must state suppressed at " + t.cell_name({r, c}));

    if (!cell.value && !cell.suppressed)
      fail("published cell missing value at " + t.cell_name({r, c}));
    if (!cell.value && (!entry.contains("lower") || !entry.contains("upper")))
      fail("hidden cell must carry explicit bounds at " + t.cell_name({r, c}));
    if (!(cell.lower < cell.upper))
      fail("bounds not strict at " + t.cell_name({r, c}));
    if (cell.value &&
        (cell.lower.compare(*cell.value) > 0 || cell.upper.compare(*cell.value) < 0))
      fail("value outside bounds at " + t.cell_name({r, c}));

    t.cell(r, c) = std::move(cell);
  }
  for (size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      fail("missing cell entry at " +
           t.cell_name({static_cast<int>(i) / t.cols(), static_cast<int>(i) % t.cols()}));

  bool have_sums = doc.contains("row_sums") || doc.contains("col_sums");
  if (have_sums) {
    if (!doc.contains("row_sums") || !doc.contains("col_sums"))
      fail("row_sums and col_sums must both be present");
    for (const auto& s : doc.at("row_sums")) t.row_sums.push_back(parse_value(s.get<std::string>()));
    for (const auto& s : doc.at("col_sums")) t.col_sums.push_back(parse_value(s.get<std::string>()));
    if (static_cast<int>(t.row_sums.size()) != t.rows() ||
        static_cast<int>(t.col_sums.size()) != t.cols())
      fail("sum list length does not match table dimensions");
  }

  if (t.complete()) {
    if (!have_sums) {
      for (int r = 0; r < t.rows(); ++r) t.row_sums.push_back(sum_row(t, r));
      for (int c = 0; c < t.cols(); ++c) t.col_sums.push_back(sum_col(t, c));
    } else {
      for (int r = 0; r < t.rows(); ++r)
        if (t.row_sums[r] != sum_row(t, r))
          fail("row sum mismatch at row " + t.row_labels[r]);
      for (int c = 0; c < t.cols(); ++c)
        if (t.col_sums[c] != sum_col(t, c))
          fail("column sum mismatch at column " + t.col_labels[c]);
    }
  } else if (!have_sums) {
    fail("published table must carry row_sums and col_sums");
  }
  return t;
}

nlohmann::json table_to_json(const Table& t) {
  nlohmann::json doc;
  doc["rows"] = t.row_labels;
  doc["cols"] = t.col_labels;
  nlohmann::json cells = nlohmann::json::array();
  for (int r = 0; r < t.rows(); ++r) {
    for (int c = 0; c < t.cols(); ++c) {
      const Cell& cell = t.cell(r, c);
      nlohmann::json e;
      e["row"] = t.row_labels[r];
      e["col"] = t.col_labels[c];
      e["value"] = cell.value ? nlohmann::json(render_value(*cell.value))
                              : nlohmann::json(nullptr);
      e["lower"] = cell.lower.render();
      e["upper"] = cell.upper.render();
      e["suppressed"] = cell.suppressed;
      cells.push_back(std::move(e));
    }
  }
  doc["cells"] = std::move(cells);
  nlohmann::json rs = nlohmann::json::array(), cs = nlohmann::json::array();
  for (const Value& v : t.row_sums) rs.push_back(render_value(v));
  for (const Value& v : t.col_sums) cs.push_back(render_value(v));
  doc["row_sums"] = std::move(rs);
  doc["col_sums"] = std::move(cs);
  return doc;
}

ValidationReport validate(const Table& t) {
  ValidationReport rep;
  auto note = [&rep](const std::string& p) { rep.problems.push_back(p); };

  if (t.row_labels.empty() || t.col_labels.empty()) note("empty row or column list");
  if (t.cells.size() != static_cast<size_t>(t.rows()) * t.cols())
    note("cell grid does not match dimensions");
  if (!t.row_sums.empty() && static_cast<int>(t.row_sums.size()) != t.rows())
    note("row sum list length mismatch");
  if (!t.col_sums.empty() && static_cast<int>(t.col_sums.size()) != t.cols())
    note("column sum list length mismatch");
  if (rep.problems.size() > 0) return rep;  // structure too broken for cell checks

  for (int r = 0; r < t.rows(); ++r) {
    for (int c = 0; c < t.cols(); ++c) {
      const Cell& cell = t.cell(r, c);
      if (!(cell.lower < cell.upper)) note("bounds not strict at " + t.cell_name({r, c}));
      if (cell.value &&
          (cell.lower.compare(*cell.value) > 0 || cell.upper.compare(*cell.value) < 0))
        note("value outside bounds at " + t.cell_name({r, c}));
      if (!cell.value && !cell.suppressed) note("published cell missing value at " + t.cell_name({r, c}));
    }
  }

  if (t.complete() && !t.row_sums.empty()) {
    for (int r = 0; r < t.rows(); ++r)
      if (t.row_sums[r] != sum_row(t, r)) note("row sum mismatch at row " + t.row_labels[r]);
    for (int c = 0; c < t.cols(); ++c)
      if (t.col_sums[c] != sum_col(t, c)) note("column sum mismatch at column " + t.col_labels[c]);
  }
  if (!t.complete() && (t.row_sums.empty() || t.col_sums.empty()))
    note("published table must carry row and column sums");
  return rep;
}

Table published_view(const Table& t) {
  Table out = t;
  for (Cell& c : out.cells)
    if (c.suppressed) c.value.reset();
  if (out.row_sums.empty()) {
    for (int r = 0; r < t.rows(); ++r) out.row_sums.push_back(sum_row(t, r));
    for (int c = 0; c < t.cols(); ++c) out.col_sums.push_back(sum_col(t, c));
  }
  return out;
}

Table with_suppressed(const Table& t, const std::vector<CellRef>& extra) {
  Table out = t;
  if (out.row_sums.empty() && out.complete()) {
    for (int r = 0; r < t.rows(); ++r) out.row_sums.push_back(sum_row(t, r));
    for (int c = 0; c < t.cols(); ++c) out.col_sums.push_back(sum_col(t, c));
  }
  for (CellRef ref : extra) {
    if (!out.in_range(ref)) throw std::invalid_argument("cell out of range");
    Cell& c = out.cell(ref.row, ref.col);
    if (c.suppressed) throw std::invalid_argument("cell already suppressed: " + t.cell_name(ref));
    c.suppressed = true;
  }
  return out;
}

Assignment original_assignment(const Table& t) {
  Assignment a;
  for (CellRef ref : t.suppressed_cells()) {
    const Cell& c = t.cell(ref);
    if (!c.value) throw std::invalid_argument("table is not complete at " + t.cell_name(ref));
    a[ref] = *c.value;
  }
  return a;
}

namespace {

void check_domain(const Table& t, const Assignment& a) {
  std::vector<CellRef> sup = t.suppressed_cells();
  if (a.size() != sup.size()) throw std::invalid_argument("assignment domain mismatch");
  for (CellRef ref : sup)
    if (!a.count(ref)) throw std::invalid_argument("assignment domain mismatch");
}

}  // namespace

bool is_unbounded_feasible(const Table& t, const Assignment& a) {
  check_domain(t, a);
  if (t.row_sums.empty() || t.col_sums.empty())
    throw std::invalid_argument("table has no published sums");
  for (int r = 0; r < t.rows(); ++r) {
    Value s = 0;
    for (int c = 0; c < t.cols(); ++c) {
      const Cell& cell = t.cell(r, c);
      if (cell.suppressed)
        s += a.at({r, c});
      else
        s += *cell.value;
    }
    if (s != t.row_sums[r]) return false;
  }
  for (int c = 0; c < t.cols(); ++c) {
    Value s = 0;
    for (int r = 0; r < t.rows(); ++r) {
      const Cell& cell = t.cell(r, c);
      if (cell.suppressed)
        s += a.at({r, c});
      else
        s += *cell.value;
    }
    if (s != t.col_sums[c]) return false;
  }
  return true;
}

bool is_bounded_feasible(const Table& t, const Assignment& a) {
  if (!is_unbounded_feasible(t, a)) return false;
  for (const auto& [ref, v] : a) {
    const Cell& cell = t.cell(ref);
    if (cell.lower.compare(v) > 0 || cell.upper.compare(v) < 0) return false;
  }
  return true;
}

Assignment apply_delta(const Assignment& a, const Delta& d) {
  Assignment out = a;
  for (const auto& [ref, v] : d) {
    auto it = out.find(ref);
    if (it == out.end())
      throw std::invalid_argument("delta support outside the suppressed set");
    it->second += v;
  }
  return out;
}

Delta negate(const Delta& d) {
  Delta out;
  for (const auto& [ref, v] : d) out[ref] = -v;
  return out;
}

}  // namespace tabprot
