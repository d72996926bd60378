#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "sheetcomp/config.hpp"
#include "sheetcomp/error.hpp"

using namespace sheetcomp;
namespace fs = std::filesystem;

TEST_CASE("defaults") {
  Config c = parse_config("");
  CHECK(c.anchors.k == 4);
  CHECK(c.anchors.theta == 0.3);
  CHECK(c.anchors.delta == 0.1);
  CHECK(c.anchors.eta == 0.5);
  CHECK(c.anchors.source == AnchorSource::Union);
  CHECK(c.tokenizer == "default");
  CHECK(c.split.gate_tokens == 4096);
  CHECK(c.split.stride == 3);
  CHECK(c.llm.temperature == 0.0);
  CHECK(c.llm.max_tokens == 300);
  CHECK(c.llm.top_p == 0.95);
  CHECK_FALSE(c.prompts_dir);
}

TEST_CASE("full file") {
  Config c = parse_config(R"(# experiment settings
tokenizer = "chars4"

[anchors]
k = 8
theta = 0.25   # looser
delta = 0.2
eta = 0.6
source = "lines"
max_candidates = 1000

[llm]
endpoint = "http://localhost:8000/v1/complete"
model = "demo"
temperature = 0.5
max_tokens = 512
top_p = 1
timeout_seconds = 10
retries = 5
backoff_ms = 0
auth_env = "MY_KEY"

[split]
gate_tokens = 2048
window = 4
stride = 2
parallelism = 3

[types]
currency_symbols = ["$", "CHF"]
date_patterns = ["\\d{2}\\.\\d{2}\\.\\d{4}"]

[prompts]
dir = "/tmp/prompts"
)");
  CHECK(c.tokenizer == "chars4");
  CHECK(c.anchors.k == 8);
  CHECK(c.anchors.theta == 0.25);
  CHECK(c.anchors.source == AnchorSource::Lines);
  CHECK(c.anchors.max_candidates == 1000);
  CHECK(c.llm.endpoint == "http://localhost:8000/v1/complete");
  CHECK(c.llm.top_p == 1.0);
  CHECK(c.llm.retries == 5);
  CHECK(c.split.gate_tokens == 2048);
  CHECK(c.split.parallelism == 3);
  CHECK(c.types.currency_symbols == std::vector<std::string>{"$", "CHF"});
  REQUIRE(c.types.extra_date_patterns.size() == 1);
  CHECK(TypeRecognizer(c.types)("14.02.2024") == DataType::Date);
  CHECK(TypeRecognizer(c.types)("CHF 12") == DataType::Currency);
  CHECK(c.prompts_dir == fs::path("/tmp/prompts"));

  PipelineConfig p = c.pipeline();
  CHECK(p.compress.anchors.k == 8);
  CHECK(p.request.temperature == 0.5);
  CHECK(p.request.max_tokens == 512);
  CHECK(p.retry.attempts == 5);
  CHECK(p.retry.base_delay.count() == 0);
  CHECK(p.split.window == 4);
}

TEST_CASE("invalid configurations") {
  CHECK_THROWS_AS(parse_config("colour = 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("[anchors]\nradius = 2"), ConfigError);
  CHECK_THROWS_AS(parse_config("[extras]\nk = 2"), ConfigError);
  CHECK_THROWS_AS(parse_config("[anchors]\nk = -1"), ConfigError);
  CHECK_THROWS_AS(parse_config("[anchors]\nk = \"four\""), ConfigError);
  CHECK_THROWS_AS(parse_config("[anchors]\ntheta = 1.5"), ConfigError);
  CHECK_THROWS_AS(parse_config("[anchors]\nsource = \"both\""), ConfigError);
  CHECK_THROWS_AS(parse_config("[split]\ngate_tokens = 0"), ConfigError);
  CHECK_THROWS_AS(parse_config("[split]\nstride = 5"), ConfigError);
  CHECK_THROWS_AS(parse_config("tokenizer = \"gpt\""), ConfigError);
  CHECK_THROWS_AS(parse_config("[types]\ndate_patterns = [\"(\"]"), ConfigError);
  CHECK_THROWS_AS(parse_config("[anchors\nk = 2"), ConfigError);
  CHECK_THROWS_AS(parse_config("k 2"), ConfigError);
  CHECK_THROWS_AS(parse_config("tokenizer = \"default\" extra"), ConfigError);
  CHECK_THROWS_AS(parse_config("tokenizer = \"unterminated"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/sheetcomp.toml"), ConfigError);
  try {
    parse_config("\n[anchors]\nradius = 2", "exp.toml");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("exp.toml:3") != std::string::npos);
    CHECK(msg.find("radius") != std::string::npos);
  }
}

TEST_CASE("live mode needs endpoint and token") {
  Config c = parse_config("[llm]\nauth_env = \"SHEETCOMP_TEST_TOKEN_X\"");
  ::unsetenv("SHEETCOMP_TEST_TOKEN_X");
  CHECK_THROWS_AS(c.http_options(), ConfigError);
  c.llm.endpoint = "http://localhost:9/v1";
  CHECK_THROWS_AS(c.http_options(), ConfigError);
  ::setenv("SHEETCOMP_TEST_TOKEN_X", "abc", 1);
  auto o = c.http_options();
  CHECK(o.auth_token == "abc");
  CHECK(o.endpoint == "http://localhost:9/v1");
  CHECK(o.timeout.count() == 60);
  ::unsetenv("SHEETCOMP_TEST_TOKEN_X");
}

TEST_CASE("relative prompt directories resolve against the file") {
  fs::path dir = fs::temp_directory_path() / ("sheetcomp_cfg_" + std::to_string(::getpid()));
  fs::create_directories(dir / "p");
  std::ofstream(dir / "exp.toml") << "[prompts]\ndir = \"p\"\n";
  std::ofstream(dir / "p" / "detect.txt") << "Custom\n[Encoded Spreadsheet]\n";
  Config c = load_config(dir / "exp.toml");
  CHECK(c.prompts_dir == dir / "p");
  CHECK(c.pipeline().prompts.detect.text == "Custom\n[Encoded Spreadsheet]");
  fs::remove_all(dir);
}
