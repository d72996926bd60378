#pragma once

#include <optional>
#include <vector>

#include "sheetcomp/grid.hpp"

namespace sheetcomp {

// Bijection between a re-indexed (extracted) grid and the original sheet:
// extracted row i is original row kept_rows[i], likewise for columns.
struct CoordinateMap {
  std::vector<int> kept_rows;
  std::vector<int> kept_cols;

  static CoordinateMap identity(int rows, int cols);
  bool is_identity() const;
  CellRange extracted_bounds() const {
    return {0, 0, static_cast<int>(kept_rows.size()) - 1, static_cast<int>(kept_cols.size()) - 1};
  }

  friend bool operator==(const CoordinateMap&, const CoordinateMap&) = default;
};

struct MappedRange {
  CellRange range;
  // True when the original-space hull spans lines that were dropped.
  bool non_contiguous = false;
};

// Extracted-space range -> original-space hull. Throws RangeError if the
// range is outside the extracted bounds.
MappedRange map_range_to_original(const CellRange& range, const CoordinateMap& map);
CellAddress map_address_to_original(CellAddress addr, const CoordinateMap& map);

// Original-space range -> extracted space; nullopt unless all four edges are kept lines.
std::optional<CellRange> map_range_to_extracted(const CellRange& range, const CoordinateMap& map);

}  // namespace sheetcomp
