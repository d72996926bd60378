#include "sheetcomp/cos.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cctype>
#include <regex>
#include <thread>

#include "sheetcomp/anchors.hpp"
#include "sheetcomp/error.hpp"
#include "sheetcomp/vanilla.hpp"

namespace sheetcomp {

namespace {

bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::string with_question(const std::string& encoded, std::string_view question) {
  std::string out = encoded;
  if (!out.empty() && out.back() != '\n') out += '\n';
  out += "Question: ";
  out += question;
  return out;
}

std::string ask(LlmClient& client, const PipelineConfig& config, std::string prompt) {
  LlmRequest req = config.request;
  req.prompt = std::move(prompt);
  return complete_with_retry(client, req, config.retry);
}

struct MappedResponse {
  std::vector<CellRange> ranges;
  std::vector<std::string> warnings;
};

MappedResponse map_ranges(const std::vector<CellRange>& parsed, const EncodedSheet& enc, const Sheet& sheet) {
  MappedResponse out;
  auto map = enc.coord_map ? *enc.coord_map : CoordinateMap::identity(sheet.rows(), sheet.cols());
  auto bounds = map.extracted_bounds();
  for (const auto& r : parsed) {
    if (!bounds.contains(r)) {
      out.warnings.push_back("range " + render_range(r) + " lies outside the encoded sheet; dropped");
      continue;
    }
    auto mapped = map_range_to_original(r, map);
    if (mapped.non_contiguous)
      out.warnings.push_back("range " + render_range(r) + " spans removed lines; mapped to " +
                             render_range(mapped.range));
    out.ranges.push_back(mapped.range);
  }
  return out;
}

std::string shift_expression(std::string_view expr, int dr, int dc) {
  return remap_addresses(expr, [&](CellAddress a) -> std::optional<CellAddress> {
    return CellAddress{a.row + dr, a.col + dc};
  });
}

}  // namespace

std::vector<CellRange> parse_detection_response(std::string_view response) {
  static const std::regex re(R"re(['"]range['"]\s*:\s*['"]\s*([^'"]*?)\s*['"])re");
  std::vector<CellRange> out;
  std::string text(response);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it) {
    try {
      out.push_back(parse_range((*it)[1].str()));
    } catch (const ParseError&) {
    }
  }
  return out;
}

QaAnswer parse_qa_response(std::string_view response) {
  QaAnswer ans;
  ans.raw_response = std::string(response);
  auto open = response.find("{[");
  if (open == std::string_view::npos) return ans;
  auto close = response.find("]}", open + 2);
  if (close == std::string_view::npos) return ans;
  auto body = response.substr(open + 2, close - open - 2);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  ans.expression = std::string(body);
  return ans;
}

std::string remap_addresses(std::string_view expr,
                            const std::function<std::optional<CellAddress>(CellAddress)>& fn) {
  std::string out;
  std::size_t i = 0;
  while (i < expr.size()) {
    char c = expr[i];
    bool starts = (is_alpha(c) || c == '$') && (i == 0 || (!is_word(expr[i - 1]) && expr[i - 1] != '$'));
    if (!starts) {
      out += c;
      ++i;
      continue;
    }
    std::size_t j = i;
    if (expr[j] == '$') ++j;
    std::size_t letters_start = j;
    while (j < expr.size() && is_alpha(expr[j])) ++j;
    std::size_t letters = j - letters_start;
    bool row_abs = j < expr.size() && expr[j] == '$';
    std::size_t k = row_abs ? j + 1 : j;
    std::size_t digits_start = k;
    while (k < expr.size() && is_digit(expr[k])) ++k;
    std::size_t digits = k - digits_start;
    bool bounded = k >= expr.size() || (!is_word(expr[k]) && expr[k] != '(');
    if (letters >= 1 && letters <= 3 && digits >= 1 && bounded) {
      std::string ref;
      for (std::size_t p = letters_start; p < letters_start + letters; ++p)
        ref += static_cast<char>(std::toupper(static_cast<unsigned char>(expr[p])));
      ref.append(expr.substr(digits_start, digits));
      std::optional<CellAddress> mapped;
      try {
        mapped = fn(parse_a1(ref));
      } catch (const ParseError&) {
      }
      if (mapped && mapped->row >= 0 && mapped->col >= 0) {
        if (expr[i] == '$') out += '$';
        out += column_name(mapped->col);
        if (row_abs) out += '$';
        out += std::to_string(mapped->row + 1);
        i = k;
        continue;
      }
    }
    // Not a reference: copy the whole word so its tail is not rescanned.
    std::size_t end = i + 1;
    while (end < expr.size() && (is_word(expr[end]) || expr[end] == '$')) ++end;
    out.append(expr.substr(i, end - i));
    i = end;
  }
  return out;
}

DetectionResult run_detection(const Sheet& sheet, const PipelineConfig& config, LlmClient& client) {
  auto options = config.compress;
  options.style = IndexStyle::Detection;
  auto enc = compress(sheet, options);
  const auto& tmpl = options.modules == ModuleSet{} ? config.prompts.detect_vanilla : config.prompts.detect;
  DetectionResult result;
  result.raw_response = ask(client, config, tmpl.render(enc.text));
  auto mapped = map_ranges(parse_detection_response(result.raw_response), enc, sheet);
  result.ranges = std::move(mapped.ranges);
  result.warnings = std::move(mapped.warnings);
  return result;
}

int predict_header(const Sheet& region) {
  auto profiles = profile_lines(region);
  const auto& rows = profiles.rows;
  int run = 0;
  while (run < static_cast<int>(rows.size()) && rows[run].frac_text >= 0.5) ++run;
  if (run >= 1 && run < static_cast<int>(rows.size()) && rows[run].frac_numeric >= 0.5) return run;
  return 1;
}

SplitOutcome split_and_answer(std::string_view question, const Sheet& region, const PipelineConfig& config,
                              LlmClient& client) {
  const auto& split = config.split;
  if (split.window < 1 || split.stride < 1 || split.stride > split.window)
    throw ConfigError("split window and stride must satisfy 1 <= stride <= window");

  SplitOutcome out;
  int h = predict_header(region);
  if (h >= region.rows() && region.rows() > 1) {
    out.warnings.push_back("header prediction covered the whole region; using the first row as header");
    h = 1;
  }
  out.header_rows = std::min(h, region.rows());

  int body = region.rows() - out.header_rows;
  for (int start = 0; start < body; start += split.stride) {
    int end = std::min(start + split.window, body);
    out.chunks.push_back({out.header_rows + start, out.header_rows + end - 1, {}});
    if (end == body) break;
  }

  std::vector<int> cols(region.cols());
  for (int c = 0; c < region.cols(); ++c) cols[c] = c;

  auto answer_chunk = [&](QaChunk& chunk) {
    std::vector<int> rows;
    for (int r = 0; r < out.header_rows; ++r) rows.push_back(r);
    for (int r = chunk.first_row; r <= chunk.last_row; ++r) rows.push_back(r);
    auto piece = region.select(rows, cols);
    auto enc = encode_vanilla(piece);
    auto reply = ask(client, config, config.prompts.cos_stage2.render(with_question(enc.text, question)));
    chunk.answer = parse_qa_response(reply);
    chunk.answer.expression = remap_addresses(chunk.answer.expression, [&](CellAddress a) -> std::optional<CellAddress> {
      if (a.row >= static_cast<int>(rows.size())) return std::nullopt;
      return CellAddress{rows[a.row], a.col};
    });
  };

  int workers = std::clamp(split.parallelism, 1, std::max(1, static_cast<int>(out.chunks.size())));
  if (workers == 1) {
    for (auto& chunk : out.chunks) answer_chunk(chunk);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < out.chunks.size(); i = next++) {
        try {
          answer_chunk(out.chunks[i]);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return out;
}

QaResult run_cos_qa(const Sheet& sheet, std::string_view question, const PipelineConfig& config,
                    LlmClient& client) {
  if (question.empty()) throw PipelineError("question must not be empty");

  auto options = config.compress;
  options.style = IndexStyle::Qa;
  auto enc = compress(sheet, options);
  QaResult result;
  result.stage1_response = ask(client, config, config.prompts.cos_stage1.render(with_question(enc.text, question)));
  auto mapped = map_ranges(parse_detection_response(result.stage1_response), enc, sheet);
  result.warnings = std::move(mapped.warnings);
  if (mapped.ranges.empty())
    throw PipelineError("stage 1 (table identification) returned no usable range: " + result.stage1_response);
  if (mapped.ranges.size() > 1)
    result.warnings.push_back("stage 1 returned " + std::to_string(mapped.ranges.size()) +
                              " ranges; using the first");
  result.region = mapped.ranges.front();

  auto region = sheet.crop(result.region);
  auto region_enc = encode_vanilla(region);
  result.region_tokens = region_enc.token_count;
  int dr = result.region.top;
  int dc = result.region.left;

  if (result.region_tokens <= config.split.gate_tokens) {
    auto reply = ask(client, config, config.prompts.cos_stage2.render(with_question(region_enc.text, question)));
    result.answer = parse_qa_response(reply);
    result.answer.expression = shift_expression(result.answer.expression, dr, dc);
    return result;
  }

  result.split = true;
  auto outcome = split_and_answer(question, region, config, client);
  result.header_rows = outcome.header_rows;
  result.chunks = std::move(outcome.chunks);
  result.warnings.insert(result.warnings.end(), outcome.warnings.begin(), outcome.warnings.end());
  for (const auto& chunk : result.chunks) {
    if (!chunk.answer.empty()) {
      result.answer = chunk.answer;
      result.answer.expression = shift_expression(chunk.answer.expression, dr, dc);
      break;
    }
  }
  return result;
}

}  // namespace sheetcomp
