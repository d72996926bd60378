#include "sheetcomp/aggregation.hpp"

#include <algorithm>
#include <map>

namespace sheetcomp {

std::string resolve_format_key(const Cell& cell, const TypeRecognizer& recognize) {
  DataType t = recognize(cell.value);
  if (t == DataType::Others) return std::string(to_string(DataType::Others));
  if (cell.nfs && !cell.nfs->empty()) return *cell.nfs;
  return std::string(to_string(t));
}

std::string resolve_format_key(const Cell& cell) {
  static const TypeRecognizer recognizer;
  return resolve_format_key(cell, recognizer);
}

std::vector<TypedArea> aggregate_identical(const Sheet& sheet, const TypeRecognizer& recognize) {
  const int rows = sheet.rows();
  const int cols = sheet.cols();
  auto at = [cols](int r, int c) { return static_cast<std::size_t>(r) * cols + c; };

  std::vector<std::string> keys(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) keys[at(r, c)] = resolve_format_key(sheet.at(r, c), recognize);

  std::vector<char> visited(keys.size(), 0);
  std::vector<TypedArea> areas;
  std::vector<CellAddress> stack;
  static constexpr int kDr[] = {-1, 1, 0, 0};
  static constexpr int kDc[] = {0, 0, -1, 1};

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (visited[at(r, c)]) continue;
      const std::string& key = keys[at(r, c)];
      TypedArea area;
      area.key = key;
      area.dtype = parse_data_type(key);
      area.range = {r, c, r, c};
      visited[at(r, c)] = 1;
      stack.push_back({r, c});
      while (!stack.empty()) {
        CellAddress cur = stack.back();
        stack.pop_back();
        area.members.push_back(cur);
        area.range.top = std::min(area.range.top, cur.row);
        area.range.left = std::min(area.range.left, cur.col);
        area.range.bottom = std::max(area.range.bottom, cur.row);
        area.range.right = std::max(area.range.right, cur.col);
        for (int d = 0; d < 4; ++d) {
          int nr = cur.row + kDr[d];
          int nc = cur.col + kDc[d];
          if (nr < 0 || nc < 0 || nr >= rows || nc >= cols) continue;
          if (visited[at(nr, nc)] || keys[at(nr, nc)] != key) continue;
          visited[at(nr, nc)] = 1;
          stack.push_back({nr, nc});
        }
      }
      std::sort(area.members.begin(), area.members.end());
      areas.push_back(std::move(area));
    }
  }
  return areas;
}

std::vector<TypedArea> aggregate_identical(const Sheet& sheet) {
  static const TypeRecognizer recognizer;
  return aggregate_identical(sheet, recognizer);
}

std::string area_label(const TypedArea& area) {
  if (area.dtype) return std::string(prompt_label(*area.dtype));
  return area.key;
}

namespace {

struct TupleEntry {
  std::string label;
  std::vector<CellRange> ranges;
};

bool row_major_less(const CellRange& a, const CellRange& b) {
  return std::pair(a.top, a.left) < std::pair(b.top, b.left);
}

// Ranges covering an area: its box when the box is exactly its members.
std::vector<CellRange> area_ranges(const TypedArea& area) {
  if (area.range.area() == static_cast<long long>(area.members.size())) return {area.range};
  CellRange box = area.range;
  std::vector<char> in(static_cast<std::size_t>(box.area()), 0);
  for (auto m : area.members)
    in[static_cast<std::size_t>(m.row - box.top) * box.width() + (m.col - box.left)] = 1;
  auto cover = greedy_rectangle_cover(box.height(), box.width(), [&](int r, int c) {
    return in[static_cast<std::size_t>(r) * box.width() + c] ? std::string_view("x") : std::string_view();
  });
  std::vector<CellRange> out;
  for (const auto& [k, r] : cover)
    out.push_back({r.top + box.top, r.left + box.left, r.bottom + box.top, r.right + box.left});
  return out;
}

// Aggregated areas grouped by label, in first-occurrence order.
std::vector<TupleEntry> area_entries(const std::vector<TypedArea>& areas) {
  std::vector<TupleEntry> entries;
  std::map<std::string, std::size_t> by_label;
  for (const auto& area : areas) {
    if (!area.aggregatable()) continue;
    std::string label = area_label(area);
    auto [it, inserted] = by_label.try_emplace(label, entries.size());
    if (inserted) entries.push_back({label, {}});
    auto ranges = area_ranges(area);
    auto& dst = entries[it->second].ranges;
    dst.insert(dst.end(), ranges.begin(), ranges.end());
  }
  for (auto& e : entries) std::sort(e.ranges.begin(), e.ranges.end(), row_major_less);
  return entries;
}

std::string render_entries(std::vector<TupleEntry> entries, IndexStyle style) {
  std::stable_sort(entries.begin(), entries.end(), [](const TupleEntry& a, const TupleEntry& b) {
    return row_major_less(a.ranges.front(), b.ranges.front());
  });
  std::string out;
  for (const auto& e : entries) {
    if (!out.empty()) out += style == IndexStyle::Detection ? "\n" : " ";
    out += '(';
    out += e.label;
    out += '|';
    for (std::size_t i = 0; i < e.ranges.size(); ++i) {
      if (i) out += ',';
      out += render_range(e.ranges[i]);
    }
    out += ')';
  }
  return out;
}

std::vector<char> aggregated_mask(const std::vector<TypedArea>& areas, int rows, int cols) {
  std::vector<char> mask(static_cast<std::size_t>(rows) * cols, 0);
  for (const auto& area : areas) {
    if (!area.aggregatable()) continue;
    for (auto m : area.members)
      if (m.row < rows && m.col < cols) mask[static_cast<std::size_t>(m.row) * cols + m.col] = 1;
  }
  return mask;
}

}  // namespace

std::string render_aggregated(const std::vector<TypedArea>& areas, const ValueIndex& index,
                              IndexStyle style) {
  const int rows = index.rows();
  const int cols = index.cols();
  auto mask = aggregated_mask(areas, rows, cols);
  Sheet values = restore(index);

  std::vector<TupleEntry> entries = area_entries(areas);
  auto cover = greedy_rectangle_cover(rows, cols, [&](int r, int c) {
    if (mask[static_cast<std::size_t>(r) * cols + c]) return std::string_view();
    return std::string_view(values.at(r, c).value);
  });
  std::map<std::string, std::size_t> by_value;
  std::vector<TupleEntry> value_entries;
  for (const auto& [value, range] : cover) {
    auto [it, inserted] = by_value.try_emplace(value, value_entries.size());
    if (inserted) value_entries.push_back({value, {}});
    value_entries[it->second].ranges.push_back(range);
  }
  entries.insert(entries.end(), value_entries.begin(), value_entries.end());
  return render_entries(std::move(entries), style);
}

std::string render_aggregated_grid(const std::vector<TypedArea>& areas, const Sheet& sheet) {
  auto mask = aggregated_mask(areas, sheet.rows(), sheet.cols());
  std::string out = render_entries(area_entries(areas), IndexStyle::Detection);
  if (!out.empty()) out += '\n';
  for (int r = 0; r < sheet.rows(); ++r) {
    bool any = false;
    for (int c = 0; c < sheet.cols(); ++c) {
      if (mask[static_cast<std::size_t>(r) * sheet.cols() + c]) continue;
      out += '|';
      out += render_a1({r, c});
      out += ',';
      out += sheet.at(r, c).value;
      any = true;
    }
    if (any) out += '\n';
  }
  return out;
}

}  // namespace sheetcomp
