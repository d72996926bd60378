#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "sheetcomp/anchors.hpp"
#include "sheetcomp/cos.hpp"
#include "sheetcomp/data_type.hpp"
#include "sheetcomp/llm_client.hpp"

namespace sheetcomp {

struct LlmSettings {
  std::string endpoint;
  std::string model;
  double temperature = 0.0;
  int max_tokens = 300;
  double top_p = 0.95;
  int timeout_seconds = 60;
  int retries = 3;
  int backoff_ms = 500;
  // Environment variable holding the bearer token.
  std::string auth_env = "SHEETCOMP_API_KEY";
};

struct Config {
  AnchorConfig anchors;
  std::string tokenizer = "default";
  LlmSettings llm;
  SplitConfig split;
  TypeRules types;
  std::optional<std::filesystem::path> prompts_dir;

  // Throws ConfigError naming the offending key.
  void validate() const;

  // Pipeline settings with templates loaded from prompts_dir when set.
  PipelineConfig pipeline() const;
  // Reads the auth token from the environment. Throws ConfigError if the
  // endpoint or the token is missing.
  HttpClientOptions http_options() const;
};

// TOML subset: [section] headers, key = value with strings, integers, floats,
// booleans and arrays of strings, '#' comments. Unknown keys are errors.
//
//   tokenizer = "default"
//   [anchors]  k, theta, delta, eta, source ("lines"|"candidates"|"union"), max_candidates
//   [llm]      endpoint, model, temperature, max_tokens, top_p, timeout_seconds, retries, backoff_ms, auth_env
//   [split]    gate_tokens, window, stride, parallelism
//   [types]    currency_symbols, date_patterns
//   [prompts]  dir
Config parse_config(std::string_view text, const std::string& source = "<config>");
// Relative prompts.dir values resolve against the file's directory.
Config load_config(const std::filesystem::path& path);

}  // namespace sheetcomp
