#include "sheetcomp/tokenizer.hpp"

#include "sheetcomp/error.hpp"

namespace sheetcomp {

namespace {

bool is_ascii_alnum(unsigned char ch) {
  return (ch >= '0' && ch <= '9') || (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z');
}

bool is_space(unsigned char ch) {
  return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' || ch == '\v';
}

}  // namespace

std::size_t default_token_estimate(std::string_view text) {
  std::size_t tokens = 0;
  std::size_t run = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto ch = static_cast<unsigned char>(text[i]);
    if (is_ascii_alnum(ch)) {
      ++run;
      continue;
    }
    tokens += (run + 3) / 4;
    run = 0;
    if (is_space(ch)) continue;
    // UTF-8 continuation bytes belong to the code point already counted.
    if ((ch & 0xC0) == 0x80) continue;
    ++tokens;
  }
  return tokens + (run + 3) / 4;
}

std::size_t CharTokenizer::count(std::string_view text) const {
  std::size_t bytes = 0;
  for (char ch : text)
    if (!is_space(static_cast<unsigned char>(ch))) ++bytes;
  return (bytes + 3) / 4;
}

std::unique_ptr<Tokenizer> make_tokenizer(std::string_view name) {
  if (name == "default") return std::make_unique<DefaultTokenizer>();
  if (name == "chars4") return std::make_unique<CharTokenizer>();
  throw ConfigError("unknown tokenizer '" + std::string(name) + "'");
}

}  // namespace sheetcomp
