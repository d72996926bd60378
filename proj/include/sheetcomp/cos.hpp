#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sheetcomp/compressor.hpp"
#include "sheetcomp/grid.hpp"
#include "sheetcomp/llm_client.hpp"
#include "sheetcomp/prompts.hpp"

namespace sheetcomp {

struct SplitConfig {
  // Regions whose vanilla encoding exceeds this many default-tokenizer tokens are split.
  std::size_t gate_tokens = 4096;
  // Body rows per chunk and the step between chunk starts.
  int window = 3;
  int stride = 3;
  // Upper bound on chunk requests in flight.
  int parallelism = 1;
};

struct PipelineConfig {
  CompressOptions compress;
  // Sampling parameters; the prompt field is ignored.
  LlmRequest request;
  RetryPolicy retry;
  SplitConfig split;
  PromptSet prompts;
};

struct DetectionResult {
  // Original-sheet coordinates, in response order.
  std::vector<CellRange> ranges;
  std::string raw_response;
  std::vector<std::string> warnings;
};

struct QaAnswer {
  // Contents of the "{[...]}" payload; empty if the reply had none.
  std::string expression;
  std::string raw_response;

  bool empty() const { return expression.empty(); }
};

// Every "'range': 'A1:F9'" in the reply, single or double quoted. Entries
// that do not parse as ranges are skipped.
std::vector<CellRange> parse_detection_response(std::string_view response);

QaAnswer parse_qa_response(std::string_view response);

// Rewrites every cell reference in an answer expression. Function names such
// as LOG10( are left alone; references the callback rejects stay unchanged.
std::string remap_addresses(std::string_view expression,
                            const std::function<std::optional<CellAddress>(CellAddress)>& fn);

DetectionResult run_detection(const Sheet& sheet, const PipelineConfig& config, LlmClient& client);

// Leading header rows: the longest run of rows at least half text that is
// directly followed by a row at least half numeric. 1 when no such run exists.
int predict_header(const Sheet& region);

struct QaChunk {
  // Region rows sent as body, inclusive.
  int first_row = 0;
  int last_row = 0;
  // Expression in region coordinates.
  QaAnswer answer;
};

struct SplitOutcome {
  int header_rows = 1;
  std::vector<QaChunk> chunks;
  std::vector<std::string> warnings;
};

// Header plus successive body windows, each answered on its own.
SplitOutcome split_and_answer(std::string_view question, const Sheet& region,
                              const PipelineConfig& config, LlmClient& client);

struct QaResult {
  // First non-empty answer, in original-sheet coordinates.
  QaAnswer answer;
  CellRange region;
  std::string stage1_response;
  std::size_t region_tokens = 0;
  bool split = false;
  int header_rows = 0;
  // Per-chunk answers in region coordinates; empty unless split.
  std::vector<QaChunk> chunks;
  std::vector<std::string> warnings;
};

// Stage 1 picks one table from the compressed sheet; stage 2 answers over
// that region uncompressed, splitting it when it exceeds the token gate.
// Throws PipelineError when stage 1 yields no usable range.
QaResult run_cos_qa(const Sheet& sheet, std::string_view question, const PipelineConfig& config,
                    LlmClient& client);

}  // namespace sheetcomp
