#pragma once

#include <string>
#include <vector>

#include "sheetcomp/grid.hpp"

namespace sheetcomp::testing {

// Column letters by counting through A, B, ..., Z, AA, AB, ... one step at a time.
std::string column_name_by_counting(int col);

// Connected-component labels via union-find over equal-keyed 4-neighbours.
// Labels are the row-major index of each component's first cell.
std::vector<int> union_find_labels(int rows, int cols, const std::vector<std::string>& keys);

// True when the ranges tile exactly the cells holding `value` in `sheet`:
// every such cell covered once, no range touching any other cell.
bool exact_cover(const Sheet& sheet, const std::string& value, const std::vector<CellRange>& ranges);

// Membership mask of lines within k of some anchor, by direct distance test.
std::vector<bool> near_anchor_mask(const std::vector<int>& anchors, int k, int extent);

// Default tokenizer reference: scans characters one at a time with an explicit state machine.
std::size_t reference_token_count(const std::string& text);

}  // namespace sheetcomp::testing
