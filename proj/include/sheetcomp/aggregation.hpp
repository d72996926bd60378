#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sheetcomp/data_type.hpp"
#include "sheetcomp/grid.hpp"
#include "sheetcomp/inverted_index.hpp"

namespace sheetcomp {

// One aggregation area as produced by the identical-cell DFS.
struct TypedArea {
  // Bounding box returned by the DFS from the seed cell.
  CellRange range;
  // NFS string or DataType name shared by every member.
  std::string key;
  // Set when the key is a recognized type rather than an NFS.
  std::optional<DataType> dtype;
  // Exact 4-connected component, row-major.
  std::vector<CellAddress> members;

  // Areas keyed Others keep their cells' literal values when rendered.
  bool aggregatable() const { return !(dtype && *dtype == DataType::Others); }
};

// Format key of a cell: its NFS when present, else its recognized type name.
// Empty cells and values the recognizer leaves as Others key as "Others"
// even when an NFS is attached.
std::string resolve_format_key(const Cell& cell, const TypeRecognizer& recognize);
std::string resolve_format_key(const Cell& cell);

// Row-major seeds; DFS over 4-neighbours sharing the seed's key. Every cell
// belongs to exactly one area's member list.
std::vector<TypedArea> aggregate_identical(const Sheet& sheet, const TypeRecognizer& recognize);
std::vector<TypedArea> aggregate_identical(const Sheet& sheet);

// Label written into a tuple for an aggregated area ("IntNum", "yyyy-mm-dd").
std::string area_label(const TypedArea& area);

// Aggregated areas become "(<label>|<range>)" tuples; every other non-empty
// cell keeps its inverted-index rendering. An area is written as its bounding
// box unless the box overlaps another area's box or covers non-members, in
// which case its members are covered with rectangles instead.
std::string render_aggregated(const std::vector<TypedArea>& areas, const ValueIndex& index,
                              IndexStyle style = IndexStyle::Detection);

// Aggregated tuples followed by "|addr,value" rows for the remaining cells;
// the encoding used when aggregation runs without inverted-index translation.
std::string render_aggregated_grid(const std::vector<TypedArea>& areas, const Sheet& sheet);

}  // namespace sheetcomp
