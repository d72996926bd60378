#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sheetcomp/coordinate_map.hpp"
#include "sheetcomp/data_type.hpp"
#include "sheetcomp/grid.hpp"

namespace sheetcomp {

enum class Axis { Row, Col };

// Which lines feed the skeleton.
enum class AnchorSource {
  Lines,       // discrepancy lines only
  Candidates,  // edges of the surviving candidate boundaries (lines if none survive)
  Union,       // both
};

struct AnchorConfig {
  // Neighbour discrepancy in any class fraction above theta marks a line.
  double theta = 0.3;
  // Minimum non-empty fraction inside a candidate boundary.
  double delta = 0.1;
  // Minimum header-like fraction of a candidate's top row or left column.
  double eta = 0.5;
  // Neighbourhood kept around each anchor line.
  int k = 4;
  AnchorSource source = AnchorSource::Union;
  // Candidate enumeration is skipped above this many boundaries.
  std::size_t max_candidates = 200000;
};

enum class CellClass : std::uint8_t { Empty, Numeric, Text };

CellClass classify(const Cell& cell, const TypeRecognizer& recognize);

struct RowColProfile {
  Axis axis = Axis::Row;
  int index = 0;
  double frac_empty = 0;
  double frac_numeric = 0;
  double frac_text = 0;
  int border_count = 0;
  // Sorted (fill colour, count) pairs.
  std::vector<std::pair<std::string, int>> fill_signature;
  int merge_spans = 0;
  int bold_count = 0;
  // Per-cell classes along the line.
  std::vector<CellClass> classes;
};

struct LineProfiles {
  std::vector<RowColProfile> rows;
  std::vector<RowColProfile> cols;
};

LineProfiles profile_lines(const Sheet& sheet, const TypeRecognizer& recognize);
LineProfiles profile_lines(const Sheet& sheet);

struct AnchorSet {
  std::vector<int> rows;  // sorted, unique
  std::vector<int> cols;

  friend bool operator==(const AnchorSet&, const AnchorSet&) = default;
};

// True when two neighbouring lines differ in a way that marks a boundary:
// a class fraction moves by more than theta (over the whole line, or over the
// cells occupied in either line), the border, fill, merge or bold signatures
// differ at all, or a run of two or more occupied cells in one line faces only
// empty cells in the other.
bool lines_differ(const RowColProfile& a, const RowColProfile& b, double theta);

// First and last lines are always anchors; any other line is an anchor when
// it differs from either neighbour.
AnchorSet detect_anchor_lines(const LineProfiles& profiles, double theta = 0.3);

struct CandidateBoundary {
  CellRange range;
  // Header-like fraction of the top row (text, year or date cells).
  double header_likeness = 0;
  // Header-like fraction of the left column.
  double left_header_likeness = 0;
  // Non-empty fraction of the whole range.
  double interior_density = 0;
};

// Every top < bottom from anchor rows crossed with every left < right from
// anchor cols.
std::vector<CandidateBoundary> propose_candidates(const AnchorSet& anchors);
std::size_t candidate_count(const AnchorSet& anchors);

// Drops candidates smaller than 2x2, sparser than delta, with a fully empty
// edge line, or with neither a header-like top row nor left column. Fills in
// the score features of the survivors.
std::vector<CandidateBoundary> filter_candidates(const Sheet& sheet,
                                                 std::vector<CandidateBoundary> candidates,
                                                 const AnchorConfig& config,
                                                 const TypeRecognizer& recognize);
std::vector<CandidateBoundary> filter_candidates(const Sheet& sheet,
                                                 std::vector<CandidateBoundary> candidates,
                                                 const AnchorConfig& config = {});

// Pairwise overlap resolution: the more header-like top row wins, ties go to
// the smaller area. Output is pairwise non-overlapping, sorted row-major.
std::vector<CandidateBoundary> resolve_overlaps(std::vector<CandidateBoundary> candidates);

struct AnchorAnalysis {
  AnchorSet lines;
  std::vector<CandidateBoundary> candidates;
  bool candidates_skipped = false;
  AnchorSet anchors;
};

// The full heuristic chain: profile, detect lines, propose, filter, resolve,
// and derive anchors per config.source.
AnchorAnalysis find_structural_anchors(const Sheet& sheet, const AnchorConfig& config,
                                       const TypeRecognizer& recognize);
AnchorAnalysis find_structural_anchors(const Sheet& sheet, const AnchorConfig& config = {});

// Union of [p-k, p+k] around every anchor line, clipped to the sheet.
std::vector<int> kept_lines(const std::vector<int>& anchors, int k, int extent);

struct Skeleton {
  Sheet sheet;
  CoordinateMap map;
};

// Keeps rows and cols within k of an anchor and re-indexes them contiguously.
Skeleton extract_skeleton(const Sheet& sheet, const AnchorSet& anchors, int k);

}  // namespace sheetcomp
