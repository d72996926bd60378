#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sheetcomp/compressor.hpp"
#include "sheetcomp/cos.hpp"
#include "sheetcomp/grid.hpp"
#include "sheetcomp/tokenizer.hpp"

namespace sheetcomp {

// All four bounds equal.
inline bool eob0_match(const CellRange& pred, const CellRange& gold) { return pred == gold; }

struct DetectionScore {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Precision, recall and F1 from counts; a ratio with a zero denominator is 0.
DetectionScore score_counts(int tp, int fp, int fn);

struct DetectionGold {
  std::string sheet;
  std::vector<CellRange> tables;
  // Alternative acceptable labelings.
  std::vector<std::vector<CellRange>> alt;
};

// One-to-one EoB-0 matching against the main labeling and every alternative;
// the labeling with the highest F1 wins (earliest on ties).
DetectionScore score_detection(std::span<const CellRange> preds, const DetectionGold& gold);

enum class SizeBucket { Small, Medium, Large, Huge };

std::string_view to_string(SizeBucket b);
inline constexpr SizeBucket kAllBuckets[] = {SizeBucket::Small, SizeBucket::Medium, SizeBucket::Large,
                                             SizeBucket::Huge};

// [0, 4000) Small, [4000, 8000) Medium, [8000, 32000) Large, otherwise Huge.
SizeBucket bucket_for_tokens(std::size_t tokens);
// Bucket of the sheet's vanilla encoding.
SizeBucket bucketize(const Sheet& sheet, const Tokenizer& tokenizer = DefaultTokenizer{});

// Uppercase, no whitespace or '$', arguments of SUM/AVG/AVERAGE/MIN/MAX/COUNT
// sorted, "X AND Y" parts sorted. A "{[...]}" wrapper is removed first.
std::string normalize_answer(std::string_view expression);
bool score_qa(const QaAnswer& answer, std::string_view gold);
bool score_qa(std::string_view answer, std::string_view gold);

// tokens * price_per_1k / 1000.
double estimate_cost(double tokens, double price_per_1k);

struct CompressionRow {
  ModuleSet modules;
  std::size_t tokens = 0;
  double ratio = 0;
};

struct CompressionReport {
  std::size_t sheets = 0;
  std::size_t vanilla_tokens = 0;
  // The eight module combinations in report order.
  std::vector<CompressionRow> rows;
};

// Token totals over the corpus per module combination; ratio = vanilla total / combination total.
CompressionReport compression_report(std::span<const Sheet> corpus, const CompressOptions& base = {},
                                     const Tokenizer& tokenizer = DefaultTokenizer{});
std::string compression_report_csv(const CompressionReport& report);
std::string compression_report_json(const CompressionReport& report);

struct SheetResult {
  std::string sheet;
  SizeBucket bucket = SizeBucket::Small;
  std::size_t vanilla_tokens = 0;
  std::size_t compressed_tokens = 0;
  DetectionScore score;
};

struct ScoreReport {
  // Micro-averaged over all scored sheets.
  DetectionScore overall;
  std::map<SizeBucket, DetectionScore> per_bucket;
  // Sorted by sheet id.
  std::vector<SheetResult> sheets;
  // Gold or prediction ids with no counterpart.
  std::vector<std::string> excluded;
};

// Sums counts per bucket and overall, then recomputes the ratios.
ScoreReport summarize(std::vector<SheetResult> results, std::vector<std::string> excluded = {});
std::string score_report_csv(const ScoreReport& report);
std::string score_report_json(const ScoreReport& report);

// [{"sheet": path, "tables": ["A1:D5"], "alt": [["A1:D3", "A5:D5"]]}]
std::vector<DetectionGold> load_detection_gold(const std::filesystem::path& path);
// [{"sheet": path, "ranges": ["A1:D5"]}]
std::map<std::string, std::vector<CellRange>> load_predictions(const std::filesystem::path& path);

struct QaGold {
  std::string sheet;
  std::string question;
  std::string answer;
};
// [{"sheet": path, "question": str, "answer": str}]
std::vector<QaGold> load_qa_gold(const std::filesystem::path& path);

}  // namespace sheetcomp
