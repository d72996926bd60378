#pragma once

#include <string_view>
#include <vector>

namespace sheetcomp {

// Row-major sweep: at each uncovered keyed cell grow right while the key
// matches, then grow down while the whole row segment matches.
template <typename KeyFn>
std::vector<std::pair<std::string, CellRange>> greedy_rectangle_cover(int rows, int cols, KeyFn key) {
  std::vector<std::pair<std::string, CellRange>> out;
  std::vector<char> covered(static_cast<std::size_t>(rows) * cols, 0);
  auto at = [cols](int r, int c) { return static_cast<std::size_t>(r) * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (covered[at(r, c)]) continue;
      std::string_view k = key(r, c);
      if (k.empty()) continue;
      int right = c;
      while (right + 1 < cols && !covered[at(r, right + 1)] && key(r, right + 1) == k) ++right;
      int bottom = r;
      while (bottom + 1 < rows) {
        bool row_matches = true;
        for (int j = c; j <= right && row_matches; ++j)
          row_matches = !covered[at(bottom + 1, j)] && key(bottom + 1, j) == k;
        if (!row_matches) break;
        ++bottom;
      }
      for (int i = r; i <= bottom; ++i)
        for (int j = c; j <= right; ++j) covered[at(i, j)] = 1;
      out.emplace_back(std::string(k), CellRange{r, c, bottom, right});
    }
  }
  return out;
}

}  // namespace sheetcomp
