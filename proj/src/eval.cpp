#include "sheetcomp/eval.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "sheetcomp/error.hpp"
#include "sheetcomp/ingest.hpp"
#include "sheetcomp/vanilla.hpp"

namespace sheetcomp {

namespace {

using nlohmann::ordered_json;

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

int match_count(std::span<const CellRange> preds, std::span<const CellRange> gold) {
  std::vector<bool> used(gold.size(), false);
  int tp = 0;
  for (const auto& p : preds) {
    for (std::size_t g = 0; g < gold.size(); ++g) {
      if (!used[g] && eob0_match(p, gold[g])) {
        used[g] = true;
        ++tp;
        break;
      }
    }
  }
  return tp;
}

bool is_commutative(std::string_view name) {
  static const std::set<std::string, std::less<>> names = {"SUM", "AVG", "AVERAGE", "MIN", "MAX", "COUNT"};
  return names.contains(name);
}

std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ',' && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

// Input is already uppercase with whitespace and '$' removed.
std::string canonical(std::string_view s) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!std::isalpha(static_cast<unsigned char>(s[i]))) {
      out += s[i++];
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '.')) ++j;
    auto word = s.substr(i, j - i);
    if (j >= s.size() || s[j] != '(') {
      out.append(word);
      i = j;
      continue;
    }
    int depth = 0;
    std::size_t close = j;
    for (; close < s.size(); ++close) {
      if (s[close] == '(') ++depth;
      else if (s[close] == ')' && --depth == 0) break;
    }
    if (close >= s.size()) {
      out.append(s.substr(i));
      break;
    }
    std::vector<std::string> args;
    for (auto a : split_top_level(s.substr(j + 1, close - j - 1))) args.push_back(canonical(a));
    if (is_commutative(word)) std::sort(args.begin(), args.end());
    out.append(word);
    out += '(';
    for (std::size_t a = 0; a < args.size(); ++a) {
      if (a) out += ',';
      out += args[a];
    }
    out += ')';
    i = close + 1;
  }
  return out;
}

std::string strip_answer_wrapper(std::string_view s) {
  auto open = s.find("{[");
  auto close = s.rfind("]}");
  if (open != std::string_view::npos && close != std::string_view::npos && close > open)
    return std::string(s.substr(open + 2, close - open - 2));
  return std::string(s);
}

ordered_json read_json_array(const std::filesystem::path& path) {
  auto text = read_file(path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
  if (!doc.is_array()) throw IngestError(path.string() + ": expected a JSON array");
  return doc;
}

std::string require_string(const ordered_json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) throw IngestError(where + "." + key + ": expected a string");
  return it->get<std::string>();
}

std::vector<CellRange> range_list(const ordered_json& arr, const std::string& where) {
  if (!arr.is_array()) throw IngestError(where + ": expected an array of ranges");
  std::vector<CellRange> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    auto here = where + "[" + std::to_string(i) + "]";
    if (!arr[i].is_string()) throw IngestError(here + ": expected a range string");
    try {
      out.push_back(parse_range(arr[i].get<std::string>()));
    } catch (const ParseError& e) {
      throw IngestError(here + ": " + e.what());
    }
  }
  return out;
}

std::string resolve_sheet(const std::filesystem::path& base, const std::string& sheet) {
  std::filesystem::path p(sheet);
  if (p.is_absolute()) return p.lexically_normal().string();
  return (base.parent_path() / p).lexically_normal().string();
}

struct Record {
  std::string scope;
  std::string sheet;
  std::string bucket;
  DetectionScore score;
  std::size_t vanilla_tokens = 0;
  std::size_t compressed_tokens = 0;
};

std::vector<Record> records(const ScoreReport& report) {
  std::vector<Record> out;
  std::map<SizeBucket, std::pair<std::size_t, std::size_t>> tokens;
  std::size_t vanilla = 0, compressed = 0;
  for (const auto& s : report.sheets) {
    out.push_back({"sheet", s.sheet, std::string(to_string(s.bucket)), s.score, s.vanilla_tokens,
                   s.compressed_tokens});
    tokens[s.bucket].first += s.vanilla_tokens;
    tokens[s.bucket].second += s.compressed_tokens;
    vanilla += s.vanilla_tokens;
    compressed += s.compressed_tokens;
  }
  for (auto b : kAllBuckets) {
    auto it = report.per_bucket.find(b);
    if (it == report.per_bucket.end()) continue;
    out.push_back({"bucket", "", std::string(to_string(b)), it->second, tokens[b].first, tokens[b].second});
  }
  out.push_back({"overall", "", "", report.overall, vanilla, compressed});
  return out;
}

std::string ratio_text(std::size_t vanilla, std::size_t compressed) {
  return compressed == 0 ? "" : fixed(static_cast<double>(vanilla) / compressed);
}

}  // namespace

DetectionScore score_counts(int tp, int fp, int fn) {
  DetectionScore s{tp, fp, fn, 0, 0, 0};
  if (tp + fp > 0) s.precision = static_cast<double>(tp) / (tp + fp);
  if (tp + fn > 0) s.recall = static_cast<double>(tp) / (tp + fn);
  if (s.precision + s.recall > 0) s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

DetectionScore score_detection(std::span<const CellRange> preds, const DetectionGold& gold) {
  auto score_against = [&](std::span<const CellRange> labels) {
    int tp = match_count(preds, labels);
    return score_counts(tp, static_cast<int>(preds.size()) - tp, static_cast<int>(labels.size()) - tp);
  };
  auto best = score_against(gold.tables);
  for (const auto& alt : gold.alt) {
    auto s = score_against(alt);
    if (s.f1 > best.f1) best = s;
  }
  return best;
}

std::string_view to_string(SizeBucket b) {
  switch (b) {
    case SizeBucket::Small: return "Small";
    case SizeBucket::Medium: return "Medium";
    case SizeBucket::Large: return "Large";
    case SizeBucket::Huge: return "Huge";
  }
  return "";
}

SizeBucket bucket_for_tokens(std::size_t tokens) {
  if (tokens < 4000) return SizeBucket::Small;
  if (tokens < 8000) return SizeBucket::Medium;
  if (tokens < 32000) return SizeBucket::Large;
  return SizeBucket::Huge;
}

SizeBucket bucketize(const Sheet& sheet, const Tokenizer& tokenizer) {
  return bucket_for_tokens(encode_vanilla(sheet, false, tokenizer).token_count);
}

std::string normalize_answer(std::string_view expression) {
  std::string upper = strip_answer_wrapper(expression);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));

  std::vector<std::string> parts;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::string part;
    for (std::size_t i = start; i < end; ++i)
      if (!std::isspace(static_cast<unsigned char>(upper[i])) && upper[i] != '$') part += upper[i];
    if (!part.empty()) parts.push_back(canonical(part));
  };
  for (std::size_t i = 0; i + 5 <= upper.size();) {
    bool sep = std::isspace(static_cast<unsigned char>(upper[i])) && upper.compare(i + 1, 3, "AND") == 0 &&
               std::isspace(static_cast<unsigned char>(upper[i + 4]));
    if (sep) {
      flush(i);
      start = i + 5;
      i = start;
    } else {
      ++i;
    }
  }
  flush(upper.size());
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " AND ";
    out += parts[i];
  }
  return out;
}

bool score_qa(std::string_view answer, std::string_view gold) {
  auto a = normalize_answer(answer);
  return !a.empty() && a == normalize_answer(gold);
}

bool score_qa(const QaAnswer& answer, std::string_view gold) { return score_qa(answer.expression, gold); }

double estimate_cost(double tokens, double price_per_1k) { return tokens * price_per_1k / 1000.0; }

CompressionReport compression_report(std::span<const Sheet> corpus, const CompressOptions& base,
                                     const Tokenizer& tokenizer) {
  CompressionReport report;
  report.sheets = corpus.size();
  for (const auto& sheet : corpus) report.vanilla_tokens += encode_vanilla(sheet, false, tokenizer).token_count;
  for (const auto& modules : all_module_sets()) {
    CompressionRow row{modules, 0, 0};
    auto options = base;
    options.modules = modules;
    for (const auto& sheet : corpus) row.tokens += compress(sheet, options, tokenizer).token_count;
    row.ratio = row.tokens == 0 ? 0 : static_cast<double>(report.vanilla_tokens) / row.tokens;
    report.rows.push_back(row);
  }
  return report;
}

std::string compression_report_csv(const CompressionReport& report) {
  std::string out = "modules,sheets,vanilla_tokens,tokens,ratio\n";
  for (const auto& row : report.rows) {
    out += row.modules.label() + "," + std::to_string(report.sheets) + "," +
           std::to_string(report.vanilla_tokens) + "," + std::to_string(row.tokens) + "," +
           ratio_text(report.vanilla_tokens, row.tokens) + "\n";
  }
  return out;
}

std::string compression_report_json(const CompressionReport& report) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["modules"] = row.modules.label();
    r["sheets"] = report.sheets;
    r["vanilla_tokens"] = report.vanilla_tokens;
    r["tokens"] = row.tokens;
    auto ratio = ratio_text(report.vanilla_tokens, row.tokens);
    r["ratio"] = ratio.empty() ? ordered_json(nullptr) : ordered_json(ratio);
    rows.push_back(std::move(r));
  }
  return ordered_json{{"rows", rows}}.dump(2) + "\n";
}

ScoreReport summarize(std::vector<SheetResult> results, std::vector<std::string> excluded) {
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.sheet < b.sheet; });
  std::sort(excluded.begin(), excluded.end());
  ScoreReport report;
  std::map<SizeBucket, std::array<int, 3>> counts;
  std::array<int, 3> total{0, 0, 0};
  for (const auto& r : results) {
    auto& c = counts[r.bucket];
    c[0] += r.score.tp;
    c[1] += r.score.fp;
    c[2] += r.score.fn;
    total[0] += r.score.tp;
    total[1] += r.score.fp;
    total[2] += r.score.fn;
  }
  for (const auto& [bucket, c] : counts) report.per_bucket[bucket] = score_counts(c[0], c[1], c[2]);
  report.overall = score_counts(total[0], total[1], total[2]);
  report.sheets = std::move(results);
  report.excluded = std::move(excluded);
  return report;
}

std::string score_report_csv(const ScoreReport& report) {
  std::string out = "scope,sheet,bucket,tp,fp,fn,precision,recall,f1,vanilla_tokens,compressed_tokens,ratio\n";
  for (const auto& r : records(report)) {
    std::string sheet = r.sheet;
    if (sheet.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : sheet) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      sheet = quoted + "\"";
    }
    out += r.scope + "," + sheet + "," + r.bucket + "," + std::to_string(r.score.tp) + "," +
           std::to_string(r.score.fp) + "," + std::to_string(r.score.fn) + "," + fixed(r.score.precision) + "," +
           fixed(r.score.recall) + "," + fixed(r.score.f1) + "," + std::to_string(r.vanilla_tokens) + "," +
           std::to_string(r.compressed_tokens) + "," + ratio_text(r.vanilla_tokens, r.compressed_tokens) + "\n";
  }
  return out;
}

std::string score_report_json(const ScoreReport& report) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : records(report)) {
    ordered_json j;
    j["scope"] = r.scope;
    j["sheet"] = r.sheet;
    j["bucket"] = r.bucket;
    j["tp"] = r.score.tp;
    j["fp"] = r.score.fp;
    j["fn"] = r.score.fn;
    j["precision"] = fixed(r.score.precision);
    j["recall"] = fixed(r.score.recall);
    j["f1"] = fixed(r.score.f1);
    j["vanilla_tokens"] = r.vanilla_tokens;
    j["compressed_tokens"] = r.compressed_tokens;
    auto ratio = ratio_text(r.vanilla_tokens, r.compressed_tokens);
    j["ratio"] = ratio.empty() ? ordered_json(nullptr) : ordered_json(ratio);
    rows.push_back(std::move(j));
  }
  return ordered_json{{"rows", rows}, {"excluded", report.excluded}}.dump(2) + "\n";
}

std::vector<DetectionGold> load_detection_gold(const std::filesystem::path& path) {
  auto doc = read_json_array(path);
  std::vector<DetectionGold> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    auto where = "$[" + std::to_string(i) + "]";
    const auto& item = doc[i];
    if (!item.is_object()) throw IngestError(path.string() + ": " + where + ": expected an object");
    DetectionGold g;
    g.sheet = resolve_sheet(path, require_string(item, "sheet", where));
    if (!item.contains("tables")) throw IngestError(where + ".tables: missing");
    g.tables = range_list(item["tables"], where + ".tables");
    if (item.contains("alt")) {
      if (!item["alt"].is_array()) throw IngestError(where + ".alt: expected an array");
      for (std::size_t a = 0; a < item["alt"].size(); ++a) {
        auto labels = range_list(item["alt"][a], where + ".alt[" + std::to_string(a) + "]");
        if (labels.empty()) throw IngestError(where + ".alt[" + std::to_string(a) + "]: labeling is empty");
        g.alt.push_back(std::move(labels));
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::map<std::string, std::vector<CellRange>> load_predictions(const std::filesystem::path& path) {
  auto doc = read_json_array(path);
  std::map<std::string, std::vector<CellRange>> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    auto where = "$[" + std::to_string(i) + "]";
    const auto& item = doc[i];
    if (!item.is_object()) throw IngestError(path.string() + ": " + where + ": expected an object");
    auto sheet = resolve_sheet(path, require_string(item, "sheet", where));
    if (!item.contains("ranges")) throw IngestError(where + ".ranges: missing");
    auto ranges = range_list(item["ranges"], where + ".ranges");
    if (!out.emplace(sheet, std::move(ranges)).second) throw IngestError(where + ": duplicate sheet " + sheet);
  }
  return out;
}

std::vector<QaGold> load_qa_gold(const std::filesystem::path& path) {
  auto doc = read_json_array(path);
  std::vector<QaGold> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    auto where = "$[" + std::to_string(i) + "]";
    const auto& item = doc[i];
    if (!item.is_object()) throw IngestError(path.string() + ": " + where + ": expected an object");
    QaGold g;
    g.sheet = resolve_sheet(path, require_string(item, "sheet", where));
    g.question = require_string(item, "question", where);
    g.answer = require_string(item, "answer", where);
    if (g.answer.empty()) throw IngestError(where + ".answer: must not be empty");
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace sheetcomp
