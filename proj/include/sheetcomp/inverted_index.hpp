#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sheetcomp/grid.hpp"

namespace sheetcomp {

// value -> ranges holding that value. Entries keep first-occurrence order of
// a row-major scan; ranges within an entry are sorted row-major.
class ValueIndex {
 public:
  struct Entry {
    std::string value;
    std::vector<CellRange> ranges;
  };

  ValueIndex(int rows, int cols) : rows_(rows), cols_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  const Entry* find(const std::string& value) const;

  // Appends a range to the value's entry, creating it on first use.
  // Throws IntegrityError for the empty string.
  void add(const std::string& value, const CellRange& range);
  // Restores row-major order of every entry's ranges.
  void sort_ranges();

 private:
  int rows_;
  int cols_;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

// Greedy maximal-rectangle cover of equal-valued cells. Empty cells are omitted.
ValueIndex invert(const Sheet& sheet);

// Dense sheet of the recorded bounds, values only. Throws IntegrityError on
// overlapping or out-of-bounds ranges.
Sheet restore(const ValueIndex& index, const std::string& name = "Sheet1");

enum class IndexStyle { Detection, Qa };

// "(value|A1:B2,C5)" tuples, one per entry. Detection style puts one tuple
// per line; Qa style joins them with a single space.
std::string render_index(const ValueIndex& index, IndexStyle style = IndexStyle::Detection);

// {"value": ["A1:A2", ...]} for debugging; entry order preserved.
std::string index_to_json(const ValueIndex& index);

// Greedy cover over an arbitrary predicate grid: cells where key(r, c) is
// non-empty are grouped by key. Shared by the index and the aggregator.
template <typename KeyFn>
std::vector<std::pair<std::string, CellRange>> greedy_rectangle_cover(int rows, int cols, KeyFn key);

}  // namespace sheetcomp

#include "sheetcomp/detail/greedy_cover.ipp"
