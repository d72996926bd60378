#include "sheetcomp/anchors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sheetcomp {

CellClass classify(const Cell& cell, const TypeRecognizer& recognize) {
  if (cell.empty()) return CellClass::Empty;
  return is_numeric(recognize(cell.value)) ? CellClass::Numeric : CellClass::Text;
}

namespace {

struct LineAccumulator {
  int empty = 0, numeric = 0, text = 0;
  int borders = 0, merges = 0, bold = 0;
  std::map<std::string, int> fills;
  std::vector<CellClass> classes;

  void add(const Cell& cell, CellClass cls) {
    classes.push_back(cls);
    switch (cls) {
      case CellClass::Empty: ++empty; break;
      case CellClass::Numeric: ++numeric; break;
      case CellClass::Text: ++text; break;
    }
    if (!cell.style.borders.empty()) ++borders;
    if (cell.style.bold) ++bold;
    if (cell.style.fill_color) ++fills[*cell.style.fill_color];
  }

  RowColProfile finish(Axis axis, int index) {
    RowColProfile p;
    p.axis = axis;
    p.index = index;
    double n = static_cast<double>(classes.size());
    p.frac_empty = empty / n;
    p.frac_numeric = numeric / n;
    p.frac_text = text / n;
    p.border_count = borders;
    p.fill_signature.assign(fills.begin(), fills.end());
    p.merge_spans = merges;
    p.bold_count = bold;
    p.classes = std::move(classes);
    return p;
  }
};

bool is_header_like(const Cell& cell, const TypeRecognizer& recognize) {
  if (cell.empty()) return false;
  DataType t = recognize(cell.value);
  return !is_numeric(t) || t == DataType::Year || t == DataType::Date;
}

// Summed-area table over a 0/1 indicator.
class PrefixSum {
 public:
  template <typename Pred>
  PrefixSum(int rows, int cols, Pred pred) : cols_(cols + 1), sums_(static_cast<std::size_t>(rows + 1) * (cols + 1), 0) {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        sums_[idx(r + 1, c + 1)] = (pred(r, c) ? 1 : 0) + sums_[idx(r, c + 1)] +
                                   sums_[idx(r + 1, c)] - sums_[idx(r, c)];
  }

  long long count(const CellRange& g) const {
    return sums_[idx(g.bottom + 1, g.right + 1)] - sums_[idx(g.top, g.right + 1)] -
           sums_[idx(g.bottom + 1, g.left)] + sums_[idx(g.top, g.left)];
  }

 private:
  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }
  int cols_;
  std::vector<long long> sums_;
};

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

LineProfiles profile_lines(const Sheet& sheet, const TypeRecognizer& recognize) {
  const int rows = sheet.rows();
  const int cols = sheet.cols();
  std::vector<CellClass> classes(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      classes[static_cast<std::size_t>(r) * cols + c] = classify(sheet.at(r, c), recognize);

  std::vector<LineAccumulator> row_acc(rows), col_acc(cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Cell& cell = sheet.at(r, c);
      CellClass cls = classes[static_cast<std::size_t>(r) * cols + c];
      row_acc[r].add(cell, cls);
      col_acc[c].add(cell, cls);
      if (cell.merge) {
        for (int i = cell.merge->top; i <= cell.merge->bottom; ++i) ++row_acc[i].merges;
        for (int j = cell.merge->left; j <= cell.merge->right; ++j) ++col_acc[j].merges;
      }
    }
  }
  LineProfiles out;
  out.rows.reserve(rows);
  out.cols.reserve(cols);
  for (int r = 0; r < rows; ++r) out.rows.push_back(row_acc[r].finish(Axis::Row, r));
  for (int c = 0; c < cols; ++c) out.cols.push_back(col_acc[c].finish(Axis::Col, c));
  return out;
}

LineProfiles profile_lines(const Sheet& sheet) {
  static const TypeRecognizer recognizer;
  return profile_lines(sheet, recognizer);
}

namespace {

// A run of two or more occupied cells in `line` facing only empty cells in `other`.
bool has_uncovered_block(const std::vector<CellClass>& line, const std::vector<CellClass>& other) {
  int run = 0;
  bool covered = false;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i < line.size() && line[i] != CellClass::Empty) {
      ++run;
      covered = covered || other[i] != CellClass::Empty;
      continue;
    }
    if (run >= 2 && !covered) return true;
    run = 0;
    covered = false;
  }
  return false;
}

}  // namespace

bool lines_differ(const RowColProfile& a, const RowColProfile& b, double theta) {
  if (std::fabs(a.frac_empty - b.frac_empty) > theta ||
      std::fabs(a.frac_numeric - b.frac_numeric) > theta ||
      std::fabs(a.frac_text - b.frac_text) > theta)
    return true;
  if (a.border_count != b.border_count || a.fill_signature != b.fill_signature ||
      a.merge_spans != b.merge_spans || a.bold_count != b.bold_count)
    return true;

  if (a.classes.size() != b.classes.size()) return false;
  if (has_uncovered_block(a.classes, b.classes) || has_uncovered_block(b.classes, a.classes)) return true;

  // Same fractions restricted to positions occupied in either line, so a
  // narrow table still registers against the blank line next to it.
  int occupied = 0;
  int counts[2][3] = {};
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    if (a.classes[i] == CellClass::Empty && b.classes[i] == CellClass::Empty) continue;
    ++occupied;
    ++counts[0][static_cast<int>(a.classes[i])];
    ++counts[1][static_cast<int>(b.classes[i])];
  }
  if (occupied == 0) return false;
  for (int k = 0; k < 3; ++k) {
    double delta = std::fabs(counts[0][k] - counts[1][k]) / static_cast<double>(occupied);
    if (delta > theta) return true;
  }
  return false;
}

namespace {

std::vector<int> detect_axis(const std::vector<RowColProfile>& lines, double theta) {
  std::vector<int> out;
  const int n = static_cast<int>(lines.size());
  for (int i = 0; i < n; ++i) {
    bool anchor = i == 0 || i == n - 1 || lines_differ(lines[i], lines[i - 1], theta) ||
                  lines_differ(lines[i], lines[i + 1], theta);
    if (anchor) out.push_back(lines[i].index);
  }
  return out;
}

}  // namespace

AnchorSet detect_anchor_lines(const LineProfiles& profiles, double theta) {
  return {detect_axis(profiles.rows, theta), detect_axis(profiles.cols, theta)};
}

std::size_t candidate_count(const AnchorSet& anchors) {
  auto pairs = [](std::size_t n) { return n < 2 ? std::size_t{0} : n * (n - 1) / 2; };
  return pairs(anchors.rows.size()) * pairs(anchors.cols.size());
}

std::vector<CandidateBoundary> propose_candidates(const AnchorSet& anchors) {
  std::vector<CandidateBoundary> out;
  out.reserve(candidate_count(anchors));
  for (std::size_t t = 0; t < anchors.rows.size(); ++t)
    for (std::size_t b = t + 1; b < anchors.rows.size(); ++b)
      for (std::size_t l = 0; l < anchors.cols.size(); ++l)
        for (std::size_t r = l + 1; r < anchors.cols.size(); ++r) {
          CandidateBoundary cb;
          cb.range = {anchors.rows[t], anchors.cols[l], anchors.rows[b], anchors.cols[r]};
          out.push_back(cb);
        }
  return out;
}

std::vector<CandidateBoundary> filter_candidates(const Sheet& sheet,
                                                 std::vector<CandidateBoundary> candidates,
                                                 const AnchorConfig& config,
                                                 const TypeRecognizer& recognize) {
  PrefixSum filled(sheet.rows(), sheet.cols(),
                   [&](int r, int c) { return !sheet.at(r, c).empty(); });
  PrefixSum header(sheet.rows(), sheet.cols(),
                   [&](int r, int c) { return is_header_like(sheet.at(r, c), recognize); });

  std::vector<CandidateBoundary> kept;
  for (auto& cb : candidates) {
    const CellRange& g = cb.range;
    if (!sheet.bounds().contains(g)) continue;
    if (g.height() < 2 || g.width() < 2) continue;

    CellRange top{g.top, g.left, g.top, g.right};
    CellRange bottom{g.bottom, g.left, g.bottom, g.right};
    CellRange left{g.top, g.left, g.bottom, g.left};
    CellRange right{g.top, g.right, g.bottom, g.right};
    if (filled.count(top) == 0 || filled.count(bottom) == 0 || filled.count(left) == 0 ||
        filled.count(right) == 0)
      continue;

    cb.interior_density = static_cast<double>(filled.count(g)) / static_cast<double>(g.area());
    if (cb.interior_density < config.delta) continue;

    cb.header_likeness = static_cast<double>(header.count(top)) / g.width();
    cb.left_header_likeness = static_cast<double>(header.count(left)) / g.height();
    if (cb.header_likeness < config.eta && cb.left_header_likeness < config.eta) continue;
    kept.push_back(cb);
  }
  return kept;
}

std::vector<CandidateBoundary> filter_candidates(const Sheet& sheet,
                                                 std::vector<CandidateBoundary> candidates,
                                                 const AnchorConfig& config) {
  static const TypeRecognizer recognizer;
  return filter_candidates(sheet, std::move(candidates), config, recognizer);
}

std::vector<CandidateBoundary> resolve_overlaps(std::vector<CandidateBoundary> candidates) {
  constexpr double kEps = 1e-12;
  // A total preference order makes the pairwise rule resolve in one pass: a
  // candidate survives iff it overlaps no already-surviving, preferred one.
  std::sort(candidates.begin(), candidates.end(),
            [&](const CandidateBoundary& a, const CandidateBoundary& b) {
              if (std::fabs(a.header_likeness - b.header_likeness) > kEps)
                return a.header_likeness > b.header_likeness;
              if (a.range.area() != b.range.area()) return a.range.area() < b.range.area();
              return a.range < b.range;
            });
  std::vector<CandidateBoundary> kept;
  for (const auto& cb : candidates) {
    bool clash = std::any_of(kept.begin(), kept.end(),
                             [&](const CandidateBoundary& k) { return k.range.overlaps(cb.range); });
    if (!clash) kept.push_back(cb);
  }
  std::sort(kept.begin(), kept.end(), [](const CandidateBoundary& a, const CandidateBoundary& b) {
    return a.range < b.range;
  });
  return kept;
}

AnchorAnalysis find_structural_anchors(const Sheet& sheet, const AnchorConfig& config,
                                       const TypeRecognizer& recognize) {
  AnchorAnalysis out;
  out.lines = detect_anchor_lines(profile_lines(sheet, recognize), config.theta);
  if (config.source == AnchorSource::Lines) {
    out.anchors = out.lines;
    return out;
  }
  if (candidate_count(out.lines) > config.max_candidates) {
    out.candidates_skipped = true;
    out.anchors = out.lines;
    return out;
  }
  out.candidates = resolve_overlaps(
      filter_candidates(sheet, propose_candidates(out.lines), config, recognize));

  std::vector<int> rows, cols;
  if (config.source == AnchorSource::Union || out.candidates.empty()) {
    rows = out.lines.rows;
    cols = out.lines.cols;
  }
  for (const auto& cb : out.candidates) {
    rows.push_back(cb.range.top);
    rows.push_back(cb.range.bottom);
    cols.push_back(cb.range.left);
    cols.push_back(cb.range.right);
  }
  out.anchors = {sorted_unique(std::move(rows)), sorted_unique(std::move(cols))};
  return out;
}

AnchorAnalysis find_structural_anchors(const Sheet& sheet, const AnchorConfig& config) {
  static const TypeRecognizer recognizer;
  return find_structural_anchors(sheet, config, recognizer);
}

std::vector<int> kept_lines(const std::vector<int>& anchors, int k, int extent) {
  std::vector<char> keep(static_cast<std::size_t>(extent), 0);
  for (int p : anchors) {
    int lo = std::max(0, p - k);
    int hi = std::min(extent - 1, p + k);
    for (int i = lo; i <= hi; ++i) keep[i] = 1;
  }
  std::vector<int> out;
  for (int i = 0; i < extent; ++i)
    if (keep[i]) out.push_back(i);
  return out;
}

Skeleton extract_skeleton(const Sheet& sheet, const AnchorSet& anchors, int k) {
  CoordinateMap map;
  map.kept_rows = kept_lines(anchors.rows, k, sheet.rows());
  map.kept_cols = kept_lines(anchors.cols, k, sheet.cols());
  // An anchor-free axis keeps its first line so the skeleton stays non-empty.
  if (map.kept_rows.empty()) map.kept_rows.push_back(0);
  if (map.kept_cols.empty()) map.kept_cols.push_back(0);
  Sheet extracted = sheet.select(map.kept_rows, map.kept_cols);
  return {std::move(extracted), std::move(map)};
}

}  // namespace sheetcomp
