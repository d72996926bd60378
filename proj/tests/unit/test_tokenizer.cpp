#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sheetcomp/error.hpp"
#include "sheetcomp/tokenizer.hpp"

using namespace sheetcomp;

TEST_CASE("alphanumeric runs cost a quarter of their length, rounded up") {
  CHECK(default_token_estimate("") == 0);
  CHECK(default_token_estimate("   \n\t") == 0);
  CHECK(default_token_estimate("a") == 1);
  CHECK(default_token_estimate("abcd") == 1);
  CHECK(default_token_estimate("abcde") == 2);
  CHECK(default_token_estimate("|A1,Year") == 4);
  CHECK(default_token_estimate("(IntNum|A1:B3)") == 8);
  CHECK(default_token_estimate("é") == 1);
  CHECK(default_token_estimate("a b") == 2);
}

TEST_CASE("default estimate agrees with the reference scanner") {
  std::mt19937_64 rng(3);
  const std::string alphabet = "abcXYZ0189 ,|:()\n\t.-$%";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1), len(0, 200);
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    auto n = len(rng);
    for (std::size_t j = 0; j < n; ++j) s += alphabet[pick(rng)];
    if (i % 5 == 0) s += "€£";
    REQUIRE(default_token_estimate(s) == testing::reference_token_count(s));
  }
}

TEST_CASE("tokenizers by name") {
  CHECK(make_tokenizer("default")->name() == "default");
  CHECK(make_tokenizer("chars4")->count("abcd efgh i") == 3);
  CHECK_THROWS_AS(make_tokenizer("gpt"), ConfigError);
}
