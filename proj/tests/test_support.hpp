#pragma once

#include "tabprot/table.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tabprot::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(TABPROT_FIXTURES_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Table load_fixture(const std::string& name) {
  return parse_table_text(slurp(fixture_path(name)));
}

// Quick builder for tiny hand-made tables: integer values, one shared
// bound pair for every cell.
inline Table make_table(int rows, int cols, const std::vector<long>& values,
                        const std::vector<CellRef>& suppressed, long lo, long hi) {
  Table t;
  for (int r = 0; r < rows; ++r) t.row_labels.push_back(std::to_string(r + 1));
  for (int c = 0; c < cols; ++c)
    t.col_labels.push_back(std::string(1, static_cast<char>('a' + c)));
  t.cells.assign(static_cast<size_t>(rows) * cols, Cell{});
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      Cell& cell = t.cell(r, c);
      cell.value = Value(values[static_cast<size_t>(r) * cols + c]);
      cell.lower = Bound::finite(Value(lo));
      cell.upper = Bound::finite(Value(hi));
    }
  }
  for (CellRef ref : suppressed) t.cell(ref.row, ref.col).suppressed = true;
  for (int r = 0; r < rows; ++r) {
    Value s = 0;
    for (int c = 0; c < cols; ++c) s += *t.cell(r, c).value;
    t.row_sums.push_back(s);
  }
  for (int c = 0; c < cols; ++c) {
    Value s = 0;
    for (int r = 0; r < rows; ++r) s += *t.cell(r, c).value;
    t.col_sums.push_back(s);
  }
  return t;
}

}  // namespace tabprot::testing
