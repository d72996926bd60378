#include "sheetcomp/grid.hpp"

#include <algorithm>
#include <cctype>

#include "sheetcomp/error.hpp"

namespace sheetcomp {

std::string column_name(int col) {
  std::string out;
  int n = col + 1;
  while (n > 0) {
    int rem = (n - 1) % 26;
    out.push_back(static_cast<char>('A' + rem));
    n = (n - 1) / 26;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

int parse_column(std::string_view letters) {
  if (letters.empty() || letters.size() > 3)
    throw ParseError("invalid column letters '" + std::string(letters) + "'");
  int n = 0;
  for (char ch : letters) {
    char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (up < 'A' || up > 'Z')
      throw ParseError("invalid column letters '" + std::string(letters) + "'");
    n = n * 26 + (up - 'A' + 1);
  }
  if (n > kMaxCols) throw ParseError("column '" + std::string(letters) + "' out of range");
  return n - 1;
}

CellAddress parse_a1(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && text[i] == '$') ++i;
  std::size_t letters_begin = i;
  while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t letters_end = i;
  if (i < text.size() && text[i] == '$') ++i;
  std::size_t digits_begin = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;

  if (letters_begin == letters_end || digits_begin == i || i != text.size() ||
      text[digits_begin] == '0' || i - digits_begin > 7)
    throw ParseError("malformed cell address '" + std::string(text) + "'");

  int col = parse_column(text.substr(letters_begin, letters_end - letters_begin));
  long row = std::stol(std::string(text.substr(digits_begin)));
  if (row > kMaxRows) throw ParseError("row out of range in '" + std::string(text) + "'");
  return {static_cast<int>(row - 1), col};
}

std::string render_a1(CellAddress addr) {
  return column_name(addr.col) + std::to_string(addr.row + 1);
}

CellRange parse_range(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return CellRange::single(parse_a1(text));
  if (text.find(':', colon + 1) != std::string_view::npos)
    throw ParseError("malformed range '" + std::string(text) + "'");
  CellAddress a = parse_a1(text.substr(0, colon));
  CellAddress b = parse_a1(text.substr(colon + 1));
  return {std::min(a.row, b.row), std::min(a.col, b.col), std::max(a.row, b.row),
          std::max(a.col, b.col)};
}

std::string render_range(const CellRange& range) {
  if (range.is_single()) return render_a1(range.top_left());
  return render_a1(range.top_left()) + ":" + render_a1({range.bottom, range.right});
}

std::string_view border_name(Border b) {
  switch (b) {
    case Border::Top: return "top";
    case Border::Bottom: return "bottom";
    case Border::Left: return "left";
    case Border::Right: return "right";
  }
  return "";
}

std::optional<Border> parse_border(std::string_view name) {
  for (Border b : kAllBorders)
    if (border_name(b) == name) return b;
  return std::nullopt;
}

Sheet::Sheet(std::string name, int rows, int cols, std::vector<Cell> cells)
    : name_(std::move(name)), rows_(rows), cols_(cols), cells_(std::move(cells)) {
  if (rows_ < 1 || cols_ < 1) throw IntegrityError("sheet must have at least one row and column");
  if (cells_.size() != static_cast<std::size_t>(rows_) * cols_)
    throw IntegrityError("cell count does not match sheet dimensions");
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      const auto& m = at(r, c).merge;
      if (!m) continue;
      if (m->top != r || m->left != c)
        throw IntegrityError("merge range " + render_range(*m) + " is not anchored at " +
                             render_a1({r, c}));
      if (m->bottom >= rows_ || m->right >= cols_)
        throw IntegrityError("merge range " + render_range(*m) + " exceeds sheet bounds");
    }
  }
}

namespace {

// Maps a sorted list of original indices onto [0, n). Returns -1 if absent.
int position_of(std::span<const int> kept, int original) {
  auto it = std::lower_bound(kept.begin(), kept.end(), original);
  return (it != kept.end() && *it == original) ? static_cast<int>(it - kept.begin()) : -1;
}

// Range of kept positions whose original index falls in [lo, hi].
std::optional<std::pair<int, int>> kept_span(std::span<const int> kept, int lo, int hi) {
  auto first = std::lower_bound(kept.begin(), kept.end(), lo);
  auto last = std::upper_bound(kept.begin(), kept.end(), hi);
  if (first == last) return std::nullopt;
  return std::pair{static_cast<int>(first - kept.begin()), static_cast<int>(last - kept.begin()) - 1};
}

}  // namespace

Sheet Sheet::select(std::span<const int> rows, std::span<const int> cols) const {
  std::vector<Cell> out;
  out.reserve(rows.size() * cols.size());
  for (int r : rows) {
    for (int c : cols) {
      Cell cell = at(r, c);
      if (cell.merge) {
        auto rs = kept_span(rows, cell.merge->top, cell.merge->bottom);
        auto cs = kept_span(cols, cell.merge->left, cell.merge->right);
        int nr = position_of(rows, r);
        int nc = position_of(cols, c);
        if (rs && cs && rs->first == nr && cs->first == nc && (rs->second > nr || cs->second > nc))
          cell.merge = CellRange{nr, nc, rs->second, cs->second};
        else
          cell.merge.reset();
      }
      out.push_back(std::move(cell));
    }
  }
  return Sheet(name_, static_cast<int>(rows.size()), static_cast<int>(cols.size()), std::move(out));
}

Sheet Sheet::crop(const CellRange& range) const {
  if (!bounds().contains(range))
    throw RangeError("range " + render_range(range) + " outside sheet bounds");
  std::vector<int> rows(range.height()), cols(range.width());
  for (int i = 0; i < range.height(); ++i) rows[i] = range.top + i;
  for (int j = 0; j < range.width(); ++j) cols[j] = range.left + j;
  return select(rows, cols);
}

bool SheetBuilder::set(CellAddress addr, Cell cell) {
  return cells_.emplace(addr, std::move(cell)).second;
}

Sheet SheetBuilder::build() const {
  int max_row = 0;
  int max_col = 0;
  for (const auto& [addr, cell] : cells_) {
    if (cell.empty()) continue;
    max_row = std::max(max_row, addr.row);
    max_col = std::max(max_col, addr.col);
  }
  int rows = max_row + 1;
  int cols = max_col + 1;
  std::vector<Cell> dense(static_cast<std::size_t>(rows) * cols);
  for (const auto& [addr, cell] : cells_) {
    if (addr.row >= rows || addr.col >= cols) continue;
    Cell& slot = dense[static_cast<std::size_t>(addr.row) * cols + addr.col];
    slot = cell;
    if (slot.merge) {
      slot.merge->bottom = std::min(slot.merge->bottom, rows - 1);
      slot.merge->right = std::min(slot.merge->right, cols - 1);
      if (slot.merge->is_single()) slot.merge.reset();
    }
  }
  return Sheet(name_, rows, cols, std::move(dense));
}

}  // namespace sheetcomp
