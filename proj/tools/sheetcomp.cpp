#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include "sheetcomp/compressor.hpp"
#include "sheetcomp/config.hpp"
#include "sheetcomp/cos.hpp"
#include "sheetcomp/error.hpp"
#include "sheetcomp/eval.hpp"
#include "sheetcomp/ingest.hpp"
#include "sheetcomp/llm_client.hpp"
#include "sheetcomp/vanilla.hpp"

namespace {

using namespace sheetcomp;
using nlohmann::ordered_json;

enum Exit { kOk = 0, kPipeline = 1, kInput = 2, kConfig = 3 };

struct Common {
  std::string config_path;
  std::optional<int> k;
  std::string tokenizer;
  std::string sheet;
};

Config load(const Common& c) {
  Config cfg = c.config_path.empty() ? Config{} : load_config(c.config_path);
  if (c.k) cfg.anchors.k = *c.k;
  if (!c.tokenizer.empty()) cfg.tokenizer = c.tokenizer;
  cfg.validate();
  return cfg;
}

Sheet pick_sheet(const std::string& path, const std::string& which) {
  auto sheets = load_sheets(path);
  if (sheets.empty()) throw IngestError(path + ": workbook has no worksheets");
  if (which.empty()) return sheets.front();
  for (auto& s : sheets)
    if (s.name() == which) return s;
  int index = 0;
  auto [p, ec] = std::from_chars(which.data(), which.data() + which.size(), index);
  if (ec == std::errc() && p == which.data() + which.size() && index >= 1 &&
      index <= static_cast<int>(sheets.size()))
    return sheets[index - 1];
  throw IngestError(path + ": no worksheet named '" + which + "'");
}

std::vector<std::string> load_mock_responses(const std::string& path) {
  auto text = read_file(path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw IngestError(path + ": " + e.what());
  }
  if (doc.is_string()) return {doc.get<std::string>()};
  if (!doc.is_array()) throw IngestError(path + ": expected a JSON array of response strings");
  std::vector<std::string> out;
  for (const auto& item : doc) {
    if (!item.is_string()) throw IngestError(path + ": every mock response must be a string");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::unique_ptr<LlmClient> make_client(const Config& cfg, const std::string& mock, bool live) {
  if (!mock.empty() && live) throw ConfigError("--mock and --live are mutually exclusive");
  if (!mock.empty()) return std::make_unique<ScriptedClient>(load_mock_responses(mock));
  if (live) return make_http_client(cfg.http_options());
  throw ConfigError("choose --mock FILE or --live");
}

ordered_json strings(const std::vector<std::string>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

ordered_json ranges(const std::vector<CellRange>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& r : v) out.push_back(render_range(r));
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestError("cannot write " + path);
  out << text;
}

void warn_all(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_encode(const Common& common, const std::string& input, bool vanilla, const std::string& modules,
               bool format, const std::string& style, const std::string& stats) {
  auto cfg = load(common);
  auto sheet = pick_sheet(input, common.sheet);
  auto tokenizer = make_tokenizer(cfg.tokenizer);

  CompressOptions options;
  options.anchors = cfg.anchors;
  options.types = cfg.types;
  options.modules = vanilla ? ModuleSet{} : ModuleSet::parse(modules);
  if (style == "qa") options.style = IndexStyle::Qa;
  else if (style != "detection") throw ConfigError("--style must be detection or qa");
  if (format && options.modules != ModuleSet{})
    throw ConfigError("--format applies to the vanilla encoding only");

  auto before = encode_vanilla(sheet, format, *tokenizer);
  auto enc = options.modules == ModuleSet{} ? before : compress(sheet, options, *tokenizer);
  std::cout << enc.text;
  if (!enc.text.empty() && enc.text.back() != '\n') std::cout << "\n";

  if (!stats.empty()) {
    ordered_json j;
    j["sheet"] = sheet.name();
    j["rows"] = sheet.rows();
    j["cols"] = sheet.cols();
    j["modules"] = options.modules.label();
    j["tokenizer"] = std::string(tokenizer->name());
    j["tokens_before"] = before.token_count;
    j["tokens_after"] = enc.token_count;
    j["ratio"] = enc.token_count == 0 ? ordered_json(nullptr)
                                      : ordered_json(compression_ratio(before.token_count, enc.token_count));
    if (enc.coord_map) {
      j["kept_rows"] = enc.coord_map->kept_rows.size();
      j["kept_cols"] = enc.coord_map->kept_cols.size();
    }
    auto text = j.dump(2) + "\n";
    if (stats == "-") std::cerr << text;
    else write_file(stats, text);
  }
  return kOk;
}

int cmd_detect(const Common& common, const std::string& input, const std::string& mock, bool live,
               const std::string& modules) {
  auto cfg = load(common);
  auto sheet = pick_sheet(input, common.sheet);
  auto client = make_client(cfg, mock, live);
  auto pipeline = cfg.pipeline();
  pipeline.compress.modules = ModuleSet::parse(modules);
  auto result = run_detection(sheet, pipeline, *client);
  warn_all(result.warnings);
  ordered_json j;
  j["sheet"] = sheet.name();
  j["ranges"] = ranges(result.ranges);
  j["raw_response"] = result.raw_response;
  j["warnings"] = strings(result.warnings);
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_qa(const Common& common, const std::string& input, const std::string& question, const std::string& mock,
           bool live) {
  if (question.empty()) throw IngestError("--question must not be empty");
  auto cfg = load(common);
  auto sheet = pick_sheet(input, common.sheet);
  auto client = make_client(cfg, mock, live);
  auto result = run_cos_qa(sheet, question, cfg.pipeline(), *client);
  warn_all(result.warnings);
  ordered_json j;
  j["sheet"] = sheet.name();
  j["question"] = question;
  j["answer"] = result.answer.expression;
  j["raw_response"] = result.answer.raw_response;
  j["region"] = render_range(result.region);
  j["region_tokens"] = result.region_tokens;
  j["split"] = result.split;
  if (result.split) {
    j["header_rows"] = result.header_rows;
    ordered_json chunks = ordered_json::array();
    for (const auto& c : result.chunks) {
      ordered_json cj;
      cj["first_row"] = c.first_row + 1;
      cj["last_row"] = c.last_row + 1;
      cj["answer"] = c.answer.expression;
      cj["raw_response"] = c.answer.raw_response;
      chunks.push_back(std::move(cj));
    }
    j["chunks"] = std::move(chunks);
  }
  j["warnings"] = strings(result.warnings);
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_eval(const Common& common, const std::string& gold_path, const std::string& pred_path,
             const std::string& run_mock, const std::string& out_prefix) {
  if (pred_path.empty() == run_mock.empty()) throw ConfigError("give exactly one of --pred or --run-mock");
  auto cfg = load(common);
  auto tokenizer = make_tokenizer(cfg.tokenizer);
  auto golds = load_detection_gold(gold_path);
  auto pipeline = cfg.pipeline();

  std::map<std::string, std::vector<CellRange>> preds;
  std::unique_ptr<ScriptedClient> client;
  if (!pred_path.empty()) preds = load_predictions(pred_path);
  else client = std::make_unique<ScriptedClient>(load_mock_responses(run_mock));

  std::vector<SheetResult> results;
  std::vector<std::string> excluded;
  std::set<std::string> seen;
  for (const auto& gold : golds) {
    if (!seen.insert(gold.sheet).second) throw IngestError(gold_path + ": duplicate sheet " + gold.sheet);
    std::vector<CellRange> predicted;
    Sheet sheet = pick_sheet(gold.sheet, "");
    if (client) {
      auto detected = run_detection(sheet, pipeline, *client);
      warn_all(detected.warnings);
      predicted = std::move(detected.ranges);
    } else {
      auto it = preds.find(gold.sheet);
      if (it == preds.end()) {
        std::cerr << "warning: no prediction for " << gold.sheet << "; excluded\n";
        excluded.push_back(gold.sheet);
        continue;
      }
      predicted = it->second;
    }
    SheetResult r;
    r.sheet = gold.sheet;
    r.vanilla_tokens = encode_vanilla(sheet, false, *tokenizer).token_count;
    r.bucket = bucket_for_tokens(r.vanilla_tokens);
    r.compressed_tokens = compress(sheet, pipeline.compress, *tokenizer).token_count;
    r.score = score_detection(predicted, gold);
    results.push_back(std::move(r));
  }
  for (const auto& [sheet, _] : preds) {
    if (!seen.contains(sheet)) {
      std::cerr << "warning: prediction for " << sheet << " has no gold entry; excluded\n";
      excluded.push_back(sheet);
    }
  }

  auto report = summarize(std::move(results), std::move(excluded));
  auto csv = score_report_csv(report);
  if (!out_prefix.empty()) {
    write_file(out_prefix + ".csv", csv);
    write_file(out_prefix + ".json", score_report_json(report));
  }
  std::cout << csv;
  return kOk;
}

int cmd_report(const Common& common, const std::vector<std::string>& inputs, const std::string& out_prefix) {
  auto cfg = load(common);
  auto tokenizer = make_tokenizer(cfg.tokenizer);
  std::vector<Sheet> corpus;
  for (const auto& path : inputs) {
    auto sheets = load_sheets(path);
    corpus.insert(corpus.end(), sheets.begin(), sheets.end());
  }
  CompressOptions base;
  base.anchors = cfg.anchors;
  base.types = cfg.types;
  auto report = compression_report(corpus, base, *tokenizer);
  auto csv = compression_report_csv(report);
  if (!out_prefix.empty()) {
    write_file(out_prefix + ".csv", csv);
    write_file(out_prefix + ".json", compression_report_json(report));
  }
  std::cout << csv;
  return kOk;
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--config", common.config_path, "Config file (TOML subset)");
  cmd->add_option("--k", common.k, "Anchor neighbourhood size")->check(CLI::NonNegativeNumber);
  cmd->add_option("--tokenizer", common.tokenizer, "Token counter: default or chars4");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spreadsheet encoding, compression and table question answering"};
  app.require_subcommand(1);

  Common common;

  std::string input, modules = "1,2,3", style = "detection", stats, mock, question;
  bool vanilla = false, compress_flag = false, format = false, live = false;

  auto* encode = app.add_subcommand("encode", "Encode a sheet as text");
  add_common(encode, common);
  encode->add_option("input", input, "Sheet file (.json or .xlsx)")->required();
  encode->add_option("--sheet", common.sheet, "Worksheet name or 1-based index");
  auto* v_flag = encode->add_flag("--vanilla", vanilla, "Uncompressed cell-by-cell encoding");
  auto* c_flag = encode->add_flag("--compress", compress_flag, "Apply the selected modules");
  v_flag->excludes(c_flag);
  encode->add_option("--modules", modules, "Modules to apply, e.g. 1,2,3");
  encode->add_flag("--format", format, "Append the cell format block (vanilla only)");
  encode->add_option("--style", style, "Index tuple layout: detection or qa");
  encode->add_option("--stats", stats, "Write token statistics as JSON to FILE, or - for stderr");

  auto* detect = app.add_subcommand("detect", "Detect table ranges");
  add_common(detect, common);
  detect->add_option("input", input, "Sheet file (.json or .xlsx)")->required();
  detect->add_option("--sheet", common.sheet, "Worksheet name or 1-based index");
  detect->add_option("--mock", mock, "JSON array of canned model responses");
  detect->add_flag("--live", live, "Call the configured endpoint");
  std::string detect_modules = "1,2,3";
  detect->add_option("--modules", detect_modules, "Modules applied before prompting");

  auto* qa = app.add_subcommand("qa", "Answer a question over a sheet");
  add_common(qa, common);
  qa->add_option("input", input, "Sheet file (.json or .xlsx)")->required();
  qa->add_option("--sheet", common.sheet, "Worksheet name or 1-based index");
  qa->add_option("--question", question, "Question text")->required();
  qa->add_option("--mock", mock, "JSON array of canned model responses");
  qa->add_flag("--live", live, "Call the configured endpoint");

  std::string gold, pred, run_mock, out_prefix;
  auto* eval = app.add_subcommand("eval", "Score detection predictions");
  add_common(eval, common);
  eval->add_option("--gold", gold, "Gold label file")->required();
  eval->add_option("--pred", pred, "Prediction file");
  eval->add_option("--run-mock", run_mock, "Run detection with canned responses, one per gold sheet");
  eval->add_option("--out", out_prefix, "Write PREFIX.csv and PREFIX.json");

  std::vector<std::string> inputs;
  auto* report = app.add_subcommand("report", "Compression ratios per module combination");
  add_common(report, common);
  report->add_option("inputs", inputs, "Sheet files")->required();
  report->add_option("--out", out_prefix, "Write PREFIX.csv and PREFIX.json");

  double tokens = 0, price = 0;
  auto* cost = app.add_subcommand("cost", "Estimate request cost");
  cost->add_option("--tokens", tokens, "Token count")->required()->check(CLI::NonNegativeNumber);
  cost->add_option("--price", price, "Price per 1,000 tokens")->required()->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*encode) {
      if (!vanilla && !compress_flag) vanilla = true;
      return cmd_encode(common, input, vanilla, modules, format, style, stats);
    }
    if (*detect) return cmd_detect(common, input, mock, live, detect_modules);
    if (*qa) return cmd_qa(common, input, question, mock, live);
    if (*eval) return cmd_eval(common, gold, pred, run_mock, out_prefix);
    if (*report) return cmd_report(common, inputs, out_prefix);
    if (*cost) {
      std::printf("%.6g\n", estimate_cost(tokens, price));
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const IngestError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const IntegrityError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPipeline;
  }
  return kOk;
}
