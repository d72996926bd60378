#include "sheetcomp/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <variant>
#include <vector>

#include "sheetcomp/error.hpp"
#include "sheetcomp/ingest.hpp"
#include "sheetcomp/tokenizer.hpp"

namespace sheetcomp {

namespace {

using Value = std::variant<std::string, long long, double, bool, std::vector<std::string>>;

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::string where;

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(where + ": " + msg); }
  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
};

std::string parse_string(Cursor& c) {
  char quote = c.text[c.pos++];
  std::string out;
  while (!c.done() && c.peek() != quote) {
    char ch = c.text[c.pos++];
    if (ch == '\\' && quote == '"') {
      if (c.done()) c.fail("unterminated escape");
      char e = c.text[c.pos++];
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: c.fail(std::string("unsupported escape \\") + e);
      }
    } else {
      out += ch;
    }
  }
  if (c.done()) c.fail("unterminated string");
  ++c.pos;
  return out;
}

Value parse_value(Cursor& c) {
  c.skip_space();
  char ch = c.peek();
  if (ch == '"' || ch == '\'') return parse_string(c);
  if (ch == '[') {
    ++c.pos;
    std::vector<std::string> items;
    for (;;) {
      c.skip_space();
      if (c.peek() == ']') {
        ++c.pos;
        break;
      }
      if (c.peek() != '"' && c.peek() != '\'') c.fail("arrays may only hold strings");
      items.push_back(parse_string(c));
      c.skip_space();
      if (c.peek() == ',') {
        ++c.pos;
      } else if (c.peek() != ']') {
        c.fail("expected ',' or ']' in array");
      }
    }
    return items;
  }
  std::size_t start = c.pos;
  while (!c.done() && c.peek() != '#' && c.peek() != ' ' && c.peek() != '\t') ++c.pos;
  auto token = c.text.substr(start, c.pos - start);
  if (token == "true") return true;
  if (token == "false") return false;
  if (token.empty()) c.fail("missing value");
  bool is_float = token.find_first_of(".eE") != std::string_view::npos;
  if (!is_float) {
    long long v = 0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec == std::errc() && p == token.data() + token.size()) return v;
  } else {
    double v = 0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec == std::errc() && p == token.data() + token.size()) return v;
  }
  c.fail("cannot parse value '" + std::string(token) + "'");
}

class Assigner {
 public:
  Assigner(std::string key, Value value, std::string where)
      : key_(std::move(key)), value_(std::move(value)), where_(std::move(where)) {}

  double number() const {
    if (auto* d = std::get_if<double>(&value_)) return *d;
    if (auto* i = std::get_if<long long>(&value_)) return static_cast<double>(*i);
    fail("expected a number");
  }
  long long integer() const {
    if (auto* i = std::get_if<long long>(&value_)) return *i;
    fail("expected an integer");
  }
  std::string string() const {
    if (auto* s = std::get_if<std::string>(&value_)) return *s;
    fail("expected a string");
  }
  std::vector<std::string> strings() const {
    if (auto* v = std::get_if<std::vector<std::string>>(&value_)) return *v;
    fail("expected an array of strings");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(where_ + ": " + key_ + ": " + msg); }

 private:
  std::string key_;
  Value value_;
  std::string where_;
};

void assign(Config& cfg, const std::string& section, const std::string& key, const Assigner& v) {
  auto unknown = [&] { v.fail("unknown key in [" + section + "]"); };
  auto as_int = [&] { return static_cast<int>(v.integer()); };
  if (section.empty()) {
    if (key == "tokenizer") cfg.tokenizer = v.string();
    else unknown();
  } else if (section == "anchors") {
    if (key == "k") cfg.anchors.k = as_int();
    else if (key == "theta") cfg.anchors.theta = v.number();
    else if (key == "delta") cfg.anchors.delta = v.number();
    else if (key == "eta") cfg.anchors.eta = v.number();
    else if (key == "max_candidates") {
      auto n = v.integer();
      if (n < 0) v.fail("must be non-negative");
      cfg.anchors.max_candidates = static_cast<std::size_t>(n);
    } else if (key == "source") {
      auto s = v.string();
      if (s == "lines") cfg.anchors.source = AnchorSource::Lines;
      else if (s == "candidates") cfg.anchors.source = AnchorSource::Candidates;
      else if (s == "union") cfg.anchors.source = AnchorSource::Union;
      else v.fail("expected lines, candidates or union");
    } else unknown();
  } else if (section == "llm") {
    if (key == "endpoint") cfg.llm.endpoint = v.string();
    else if (key == "model") cfg.llm.model = v.string();
    else if (key == "temperature") cfg.llm.temperature = v.number();
    else if (key == "max_tokens") cfg.llm.max_tokens = as_int();
    else if (key == "top_p") cfg.llm.top_p = v.number();
    else if (key == "timeout_seconds") cfg.llm.timeout_seconds = as_int();
    else if (key == "retries") cfg.llm.retries = as_int();
    else if (key == "backoff_ms") cfg.llm.backoff_ms = as_int();
    else if (key == "auth_env") cfg.llm.auth_env = v.string();
    else unknown();
  } else if (section == "split") {
    if (key == "gate_tokens") {
      auto n = v.integer();
      if (n < 1) v.fail("must be at least 1");
      cfg.split.gate_tokens = static_cast<std::size_t>(n);
    } else if (key == "window") cfg.split.window = as_int();
    else if (key == "stride") cfg.split.stride = as_int();
    else if (key == "parallelism") cfg.split.parallelism = as_int();
    else unknown();
  } else if (section == "types") {
    if (key == "currency_symbols") cfg.types.currency_symbols = v.strings();
    else if (key == "date_patterns") cfg.types.extra_date_patterns = v.strings();
    else unknown();
  } else if (section == "prompts") {
    if (key == "dir") cfg.prompts_dir = v.string();
    else unknown();
  } else {
    v.fail("unknown section [" + section + "]");
  }
}

bool valid_key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

}  // namespace

void Config::validate() const {
  auto unit = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
  };
  unit(anchors.theta, "anchors.theta");
  unit(anchors.delta, "anchors.delta");
  unit(anchors.eta, "anchors.eta");
  unit(llm.top_p, "llm.top_p");
  if (anchors.k < 0) throw ConfigError("anchors.k must be >= 0");
  if (split.gate_tokens < 1) throw ConfigError("split.gate_tokens must be >= 1");
  if (split.window < 1) throw ConfigError("split.window must be >= 1");
  if (split.stride < 1 || split.stride > split.window)
    throw ConfigError("split.stride must lie in [1, split.window]");
  if (split.parallelism < 1) throw ConfigError("split.parallelism must be >= 1");
  if (llm.temperature < 0) throw ConfigError("llm.temperature must be >= 0");
  if (llm.max_tokens < 1) throw ConfigError("llm.max_tokens must be >= 1");
  if (llm.timeout_seconds < 1) throw ConfigError("llm.timeout_seconds must be >= 1");
  if (llm.retries < 1) throw ConfigError("llm.retries must be >= 1");
  if (llm.backoff_ms < 0) throw ConfigError("llm.backoff_ms must be >= 0");
  make_tokenizer(tokenizer);
  try {
    TypeRecognizer check(types);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("types.date_patterns: ") + e.what());
  }
}

PipelineConfig Config::pipeline() const {
  PipelineConfig p;
  p.compress.anchors = anchors;
  p.compress.types = types;
  p.request.temperature = llm.temperature;
  p.request.max_tokens = llm.max_tokens;
  p.request.top_p = llm.top_p;
  p.retry.attempts = llm.retries;
  p.retry.base_delay = std::chrono::milliseconds(llm.backoff_ms);
  p.split = split;
  if (prompts_dir) p.prompts = PromptSet::from_directory(*prompts_dir);
  return p;
}

HttpClientOptions Config::http_options() const {
  if (llm.endpoint.empty()) throw ConfigError("llm.endpoint is required for live mode");
  const char* token = std::getenv(llm.auth_env.c_str());
  if (token == nullptr || *token == '\0')
    throw ConfigError("live mode needs the " + llm.auth_env + " environment variable");
  HttpClientOptions o;
  o.endpoint = llm.endpoint;
  o.model = llm.model;
  o.auth_token = token;
  o.timeout = std::chrono::seconds(llm.timeout_seconds);
  return o;
}

Config parse_config(std::string_view text, const std::string& source) {
  Config cfg;
  std::string section;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;

    Cursor c{line, 0, source + ":" + std::to_string(line_no)};
    c.skip_space();
    if (c.done() || c.peek() == '#') continue;
    if (c.peek() == '[') {
      auto close = line.find(']', c.pos);
      if (close == std::string_view::npos) c.fail("unterminated section header");
      section = std::string(line.substr(c.pos + 1, close - c.pos - 1));
      c.pos = close + 1;
    } else {
      std::size_t key_start = c.pos;
      while (!c.done() && valid_key_char(c.peek())) ++c.pos;
      std::string key(line.substr(key_start, c.pos - key_start));
      if (key.empty()) c.fail("expected a key");
      c.skip_space();
      if (c.peek() != '=') c.fail("expected '=' after " + key);
      ++c.pos;
      auto value = parse_value(c);
      assign(cfg, section, key, Assigner(key, std::move(value), c.where));
    }
    c.skip_space();
    if (!c.done() && c.peek() != '#') c.fail("unexpected trailing text");
    if (end == text.size()) break;
  }
  cfg.validate();
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IngestError& e) {
    throw ConfigError(e.what());
  }
  auto cfg = parse_config(text, path.string());
  if (cfg.prompts_dir && cfg.prompts_dir->is_relative()) cfg.prompts_dir = path.parent_path() / *cfg.prompts_dir;
  return cfg;
}

}  // namespace sheetcomp
