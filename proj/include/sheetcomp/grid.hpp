#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sheetcomp {

// Largest grid an OOXML workbook can address.
inline constexpr int kMaxRows = 1048576;
inline constexpr int kMaxCols = 16384;

// Zero-based cell coordinate.
struct CellAddress {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const CellAddress&, const CellAddress&) = default;
};

// Inclusive rectangle of cells, zero-based.
struct CellRange {
  int top = 0;
  int left = 0;
  int bottom = 0;
  int right = 0;

  static CellRange single(CellAddress a) { return {a.row, a.col, a.row, a.col}; }

  int height() const { return bottom - top + 1; }
  int width() const { return right - left + 1; }
  long long area() const { return static_cast<long long>(height()) * width(); }
  bool contains(CellAddress a) const {
    return a.row >= top && a.row <= bottom && a.col >= left && a.col <= right;
  }
  bool contains(const CellRange& r) const {
    return r.top >= top && r.bottom <= bottom && r.left >= left && r.right <= right;
  }
  bool overlaps(const CellRange& r) const {
    return top <= r.bottom && r.top <= bottom && left <= r.right && r.left <= right;
  }
  bool is_single() const { return top == bottom && left == right; }
  CellAddress top_left() const { return {top, left}; }

  friend auto operator<=>(const CellRange&, const CellRange&) = default;
};

// Column letters <-> zero-based index, bijective base 26 (A=0, Z=25, AA=26).
std::string column_name(int col);
int parse_column(std::string_view letters);

// "AB5" -> {4, 27}. Throws ParseError naming the offending token.
CellAddress parse_a1(std::string_view text);
std::string render_a1(CellAddress addr);

// "A1:D5" or a single address "B2". Corners may be given in any order.
CellRange parse_range(std::string_view text);
// Single cells render as a bare address.
std::string render_range(const CellRange& range);

enum class Border : std::uint8_t { Top = 1, Bottom = 2, Left = 4, Right = 8 };

// Subset of {top, bottom, left, right}.
class BorderSet {
 public:
  constexpr BorderSet() = default;
  constexpr BorderSet(std::initializer_list<Border> sides) {
    for (Border b : sides) insert(b);
  }

  constexpr void insert(Border b) { bits_ |= static_cast<std::uint8_t>(b); }
  constexpr bool has(Border b) const { return (bits_ & static_cast<std::uint8_t>(b)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }

  friend constexpr bool operator==(BorderSet, BorderSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

std::string_view border_name(Border b);  // "top", "bottom", ...
std::optional<Border> parse_border(std::string_view name);
inline constexpr Border kAllBorders[] = {Border::Top, Border::Bottom, Border::Left, Border::Right};

struct StyleAttrs {
  std::optional<std::string> fill_color;
  bool bold = false;
  BorderSet borders;

  bool is_plain() const { return !fill_color && !bold && borders.empty(); }
  friend bool operator==(const StyleAttrs&, const StyleAttrs&) = default;
};

struct Cell {
  std::string value;
  std::optional<std::string> nfs;
  StyleAttrs style;
  // Present only on the top-left cell of a merged region.
  std::optional<CellRange> merge;

  bool empty() const { return value.empty(); }
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Immutable dense grid. Every (row, col) inside the bounds resolves to a Cell.
class Sheet {
 public:
  // Validates shape and merge anchors; throws IntegrityError.
  Sheet(std::string name, int rows, int cols, std::vector<Cell> cells);

  const std::string& name() const { return name_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  CellRange bounds() const { return {0, 0, rows_ - 1, cols_ - 1}; }

  const Cell& at(int row, int col) const { return cells_[index(row, col)]; }
  const Cell& at(CellAddress a) const { return at(a.row, a.col); }
  std::span<const Cell> row_cells(int row) const {
    return std::span<const Cell>(cells_).subspan(index(row, 0), cols_);
  }
  std::span<const Cell> cells() const { return cells_; }

  // New sheet made of the given original rows and cols (both strictly increasing),
  // re-indexed contiguously. Merge spans are clipped to the kept lines.
  Sheet select(std::span<const int> rows, std::span<const int> cols) const;
  // Rectangular sub-grid re-indexed to start at A1.
  Sheet crop(const CellRange& range) const;

  friend bool operator==(const Sheet&, const Sheet&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * cols_ + col;
  }

  std::string name_;
  int rows_;
  int cols_;
  std::vector<Cell> cells_;
};

// Sparse accumulation of cells, densified and trimmed by build().
class SheetBuilder {
 public:
  explicit SheetBuilder(std::string name = "Sheet1") : name_(std::move(name)) {}

  // Returns false if the address was already set.
  bool set(CellAddress addr, Cell cell);
  bool contains(CellAddress addr) const { return cells_.contains(addr); }

  // Trailing rows/cols with no non-empty value are dropped; an all-empty
  // input yields a 1x1 sheet. Merge spans are clipped to the final bounds.
  Sheet build() const;

 private:
  std::string name_;
  std::map<CellAddress, Cell> cells_;
};

}  // namespace sheetcomp
