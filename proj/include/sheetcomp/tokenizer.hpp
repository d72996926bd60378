#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace sheetcomp {

// Deterministic text -> token count. Implementations must map "" to 0.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::string_view name() const = 0;
  virtual std::size_t count(std::string_view text) const = 0;
};

// Each maximal ASCII alphanumeric run of length L costs ceil(L/4); every
// other non-whitespace code point costs 1; whitespace is free.
std::size_t default_token_estimate(std::string_view text);

class DefaultTokenizer final : public Tokenizer {
 public:
  std::string_view name() const override { return "default"; }
  std::size_t count(std::string_view text) const override { return default_token_estimate(text); }
};

// ceil(bytes / 4) over non-whitespace bytes; a cruder budget estimate.
class CharTokenizer final : public Tokenizer {
 public:
  std::string_view name() const override { return "chars4"; }
  std::size_t count(std::string_view text) const override;
};

// "default" or "chars4". Throws ConfigError otherwise.
std::unique_ptr<Tokenizer> make_tokenizer(std::string_view name);

}  // namespace sheetcomp
