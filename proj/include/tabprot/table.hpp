#pragma once

#include "tabprot/value.hpp"

#include <json.hpp>

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tabprot {

// A cell bound: a finite rational or one of the two infinities.
// Totally ordered: -inf < any finite value < +inf.
struct Bound {
  enum class Kind { neg_inf, finite, pos_inf };

  Kind kind = Kind::neg_inf;
  Value value{};

  static Bound neg_infinity() { return Bound{Kind::neg_inf, Value{}}; }
  static Bound pos_infinity() { return Bound{Kind::pos_inf, Value{}}; }
  static Bound finite(Value v) { return Bound{Kind::finite, std::move(v)}; }

  bool is_finite() const { return kind == Kind::finite; }

  // <0 if bound below v, 0 if equal, >0 if above.
  int compare(const Value& v) const {
    if (kind == Kind::neg_inf) return -1;
    if (kind == Kind::pos_inf) return 1;
    if (value < v) return -1;
    if (value > v) return 1;
    return 0;
  }

  bool operator==(const Bound& o) const {
    return kind == o.kind && (kind != Kind::finite || value == o.value);
  }
  bool operator<(const Bound& o) const {
    if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
    return kind == Kind::finite && value < o.value;
  }

  // Accepts "-inf", "inf", "+inf" or a value literal.
  static Bound parse(const std::string& text);
  std::string render() const;
};

struct CellRef {
  int row = 0;
  int col = 0;
  auto operator<=>(const CellRef&) const = default;
};

struct Cell {
  std::optional<Value> value;  // absent on suppressed cells of a published table
  Bound lower = Bound::neg_infinity();
  Bound upper = Bound::pos_infinity();
  bool suppressed = false;
};

// Two-dimensional table with published row and column sums. Immutable by
// convention after construction; every operation below is a pure function.
struct Table {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<Cell> cells;  // row-major, rows() * cols()
  std::vector<Value> row_sums;
  std::vector<Value> col_sums;

  int rows() const { return static_cast<int>(row_labels.size()); }
  int cols() const { return static_cast<int>(col_labels.size()); }

  Cell& cell(int r, int c) { return cells[static_cast<size_t>(r) * cols() + c]; }
  const Cell& cell(int r, int c) const {
    return cells[static_cast<size_t>(r) * cols() + c];
  }
  const Cell& cell(CellRef ref) const { return cell(ref.row, ref.col); }

  bool in_range(CellRef ref) const {
    return ref.row >= 0 && ref.row < rows() && ref.col >= 0 && ref.col < cols();
  }

  // All suppressed cells in row-major order.
  std::vector<CellRef> suppressed_cells() const;

  // True when every cell value is present.
  bool complete() const;

  int find_row(const std::string& label) const;
  int find_col(const std::string& label) const;
  std::string cell_name(CellRef ref) const;
};

// Values for exactly the suppressed cells of a table.
using Assignment = std::map<CellRef, Value>;
// Sparse additive perturbation; absent cells are zero.
using Delta = std::map<CellRef, Value>;

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Parses the JSON table document; throws std::runtime_error with a
// description on malformed documents, bound violations, non-strict bounds
// and sum mismatches on complete tables.
Table parse_table(const nlohmann::json& doc);
Table parse_table_text(const std::string& json_text);
nlohmann::json table_to_json(const Table& t);

// Lists every violated table invariant; empty report iff well formed.
ValidationReport validate(const Table& t);

// Copy with the suppressed-cell values hidden.
Table published_view(const Table& t);

// Copy with the given (published) cells additionally suppressed.
// Throws if a cell is out of range or already suppressed.
Table with_suppressed(const Table& t, const std::vector<CellRef>& extra);

// The suppressed-cell values of a complete table, as an assignment.
Assignment original_assignment(const Table& t);

// True iff filling `a` into the published table makes every row and column
// add up to its published sum. Throws on assignment domain mismatch.
bool is_unbounded_feasible(const Table& t, const Assignment& a);

// Unbounded feasibility plus every assigned value within its cell bounds.
bool is_bounded_feasible(const Table& t, const Assignment& a);

// Pointwise sum; throws if the delta's support is not contained in the
// assignment's domain.
Assignment apply_delta(const Assignment& a, const Delta& d);

Delta negate(const Delta& d);

}  // namespace tabprot
