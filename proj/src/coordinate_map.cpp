#include "sheetcomp/coordinate_map.hpp"

#include <algorithm>

#include "sheetcomp/error.hpp"

namespace sheetcomp {

CoordinateMap CoordinateMap::identity(int rows, int cols) {
  CoordinateMap m;
  m.kept_rows.resize(rows);
  m.kept_cols.resize(cols);
  for (int i = 0; i < rows; ++i) m.kept_rows[i] = i;
  for (int j = 0; j < cols; ++j) m.kept_cols[j] = j;
  return m;
}

bool CoordinateMap::is_identity() const {
  for (std::size_t i = 0; i < kept_rows.size(); ++i)
    if (kept_rows[i] != static_cast<int>(i)) return false;
  for (std::size_t j = 0; j < kept_cols.size(); ++j)
    if (kept_cols[j] != static_cast<int>(j)) return false;
  return true;
}

MappedRange map_range_to_original(const CellRange& range, const CoordinateMap& map) {
  if (range.top < 0 || range.left < 0 || !map.extracted_bounds().contains(range) ||
      map.kept_rows.empty() || map.kept_cols.empty())
    throw RangeError("range " + render_range(range) + " outside extracted bounds " +
                     render_range(map.extracted_bounds()));
  MappedRange out;
  out.range = {map.kept_rows[range.top], map.kept_cols[range.left], map.kept_rows[range.bottom],
               map.kept_cols[range.right]};
  out.non_contiguous = out.range.height() != range.height() || out.range.width() != range.width();
  return out;
}

CellAddress map_address_to_original(CellAddress addr, const CoordinateMap& map) {
  return map_range_to_original(CellRange::single(addr), map).range.top_left();
}

std::optional<CellRange> map_range_to_extracted(const CellRange& range, const CoordinateMap& map) {
  auto find = [](const std::vector<int>& kept, int v) -> int {
    auto it = std::lower_bound(kept.begin(), kept.end(), v);
    return it != kept.end() && *it == v ? static_cast<int>(it - kept.begin()) : -1;
  };
  int top = find(map.kept_rows, range.top);
  int bottom = find(map.kept_rows, range.bottom);
  int left = find(map.kept_cols, range.left);
  int right = find(map.kept_cols, range.right);
  if (top < 0 || bottom < 0 || left < 0 || right < 0) return std::nullopt;
  return CellRange{top, left, bottom, right};
}

}  // namespace sheetcomp
