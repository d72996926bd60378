#include "sheetcomp/inverted_index.hpp"

#include <algorithm>
#include <json.hpp>

#include "sheetcomp/error.hpp"

namespace sheetcomp {

const ValueIndex::Entry* ValueIndex::find(const std::string& value) const {
  auto it = lookup_.find(value);
  return it == lookup_.end() ? nullptr : &entries_[it->second];
}

void ValueIndex::add(const std::string& value, const CellRange& range) {
  if (value.empty()) throw IntegrityError("value index cannot hold the empty string");
  auto [it, inserted] = lookup_.try_emplace(value, entries_.size());
  if (inserted) entries_.push_back({value, {}});
  entries_[it->second].ranges.push_back(range);
}

void ValueIndex::sort_ranges() {
  for (auto& e : entries_)
    std::sort(e.ranges.begin(), e.ranges.end(), [](const CellRange& a, const CellRange& b) {
      return std::pair(a.top, a.left) < std::pair(b.top, b.left);
    });
}

ValueIndex invert(const Sheet& sheet) {
  ValueIndex index(sheet.rows(), sheet.cols());
  auto cover = greedy_rectangle_cover(sheet.rows(), sheet.cols(), [&](int r, int c) {
    return std::string_view(sheet.at(r, c).value);
  });
  for (const auto& [value, range] : cover) index.add(value, range);
  // The sweep emits in row-major order of top-left corners already.
  return index;
}

Sheet restore(const ValueIndex& index, const std::string& name) {
  if (index.rows() < 1 || index.cols() < 1) throw IntegrityError("index bounds must be at least 1x1");
  std::vector<Cell> cells(static_cast<std::size_t>(index.rows()) * index.cols());
  std::vector<char> filled(cells.size(), 0);
  CellRange bounds{0, 0, index.rows() - 1, index.cols() - 1};
  for (const auto& entry : index.entries()) {
    if (entry.value.empty()) throw IntegrityError("index holds an entry for the empty string");
    for (const auto& range : entry.ranges) {
      if (range.top < 0 || range.left < 0 || !bounds.contains(range))
        throw IntegrityError("range " + render_range(range) + " outside index bounds");
      for (int r = range.top; r <= range.bottom; ++r) {
        for (int c = range.left; c <= range.right; ++c) {
          std::size_t i = static_cast<std::size_t>(r) * index.cols() + c;
          if (filled[i])
            throw IntegrityError("overlapping ranges at " + render_a1({r, c}));
          filled[i] = 1;
          cells[i].value = entry.value;
        }
      }
    }
  }
  return Sheet(name, index.rows(), index.cols(), std::move(cells));
}

std::string render_index(const ValueIndex& index, IndexStyle style) {
  std::string out;
  for (const auto& entry : index.entries()) {
    if (!out.empty()) out += style == IndexStyle::Detection ? "\n" : " ";
    out += '(';
    out += entry.value;
    out += '|';
    for (std::size_t i = 0; i < entry.ranges.size(); ++i) {
      if (i) out += ',';
      out += render_range(entry.ranges[i]);
    }
    out += ')';
  }
  return out;
}

std::string index_to_json(const ValueIndex& index) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& entry : index.entries()) {
    auto ranges = nlohmann::ordered_json::array();
    for (const auto& r : entry.ranges) ranges.push_back(render_range(r));
    doc[entry.value] = std::move(ranges);
  }
  return doc.dump();
}

}  // namespace sheetcomp
