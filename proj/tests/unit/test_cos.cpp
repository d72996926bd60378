#include <doctest.h>

#include <map>
#include <set>

#include "generators.hpp"
#include "sheetcomp/cos.hpp"
#include "sheetcomp/error.hpp"

using namespace sheetcomp;
using namespace sheetcomp::testing;

namespace {

Sheet from_rows(const std::vector<std::vector<std::string>>& rows) {
  SheetBuilder b;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      Cell cell;
      cell.value = rows[r][c];
      b.set({static_cast<int>(r), static_cast<int>(c)}, cell);
    }
  return b.build();
}

PipelineConfig fast_config() {
  PipelineConfig config;
  config.retry.base_delay = std::chrono::milliseconds(0);
  return config;
}

std::optional<CellAddress> plus_one_row(CellAddress a) { return CellAddress{a.row + 1, a.col}; }

// Header line, 9 numeric rows; region A1:C10.
Sheet small_table() {
  std::vector<std::vector<std::string>> rows = {{"Year", "Sales", "Cost"}};
  for (int r = 0; r < 9; ++r) rows.push_back({std::to_string(2010 + r), std::to_string(100 + r), std::to_string(50 + r)});
  return from_rows(rows);
}

}  // namespace

TEST_CASE("detection response parsing") {
  CHECK(parse_detection_response("[{'range': 'A1:F9'}, {'range': 'A12:F18'}]") ==
        std::vector<CellRange>{parse_range("A1:F9"), parse_range("A12:F18")});
  CHECK(parse_detection_response(R"([{"range": "B2:C3"}])") == std::vector<CellRange>{parse_range("B2:C3")});
  CHECK(parse_detection_response("[{'range':'Z9'}]") == std::vector<CellRange>{parse_range("Z9")});
  CHECK(parse_detection_response("I could not find a table.").empty());
  CHECK(parse_detection_response("[{'range': 'nonsense'}, {'range': 'A1:B2'}]") ==
        std::vector<CellRange>{parse_range("A1:B2")});
}

TEST_CASE("answer parsing") {
  CHECK(parse_qa_response("{[B3]}").expression == "B3");
  CHECK(parse_qa_response("The answer is {[SUM(A2:A10)]}.").expression == "SUM(A2:A10)");
  CHECK(parse_qa_response("{[ C4 ]}").expression == "C4");
  QaAnswer none = parse_qa_response("no idea");
  CHECK(none.empty());
  CHECK(none.raw_response == "no idea");
}

TEST_CASE("address remapping") {
  CHECK(remap_addresses("SUM(A2:A10)", plus_one_row) == "SUM(A3:A11)");
  CHECK(remap_addresses("B3", plus_one_row) == "B4");
  CHECK(remap_addresses("LOG10(A1)+$B$2-c3", plus_one_row) == "LOG10(A2)+$B$3-C4");
  CHECK(remap_addresses("B3 AND Total", plus_one_row) == "B4 AND Total");
  CHECK(remap_addresses("XYZW1", plus_one_row) == "XYZW1");
  CHECK(remap_addresses("B3", [](CellAddress) -> std::optional<CellAddress> { return std::nullopt; }) == "B3");
}

TEST_CASE("detection through a mock client") {
  std::vector<std::vector<std::string>> rows = {{"Id", "A", "B", "C", "D", "E"}};
  for (int r = 1; r < 9; ++r) rows.push_back({"1", "2", "3", "4", "5", std::to_string(r)});
  Sheet s = from_rows(rows);
  PipelineConfig config = fast_config();
  config.compress.modules = {};
  ScriptedClient client({"[{'range': 'A1:F9'}]"});
  DetectionResult r = run_detection(s, config, client);
  CHECK(r.ranges == std::vector<CellRange>{parse_range("A1:F9")});
  CHECK(r.warnings.empty());
  CHECK(client.requests()[0].prompt == config.prompts.detect_vanilla.render(vanilla_value_block(s)));

  ScriptedClient outside({"[{'range': 'A1:G12'}, {'range': 'B2:C3'}]"});
  r = run_detection(s, config, outside);
  CHECK(r.ranges == std::vector<CellRange>{parse_range("B2:C3")});
  CHECK(r.warnings.size() == 1);

  ScriptedClient prose({"There is a table somewhere."});
  r = run_detection(s, fast_config(), prose);
  CHECK(r.ranges.empty());
  CHECK(r.raw_response == "There is a table somewhere.");
}

TEST_CASE("detection maps extracted ranges back to the sheet") {
  SheetBuilder b;
  auto put = [&](int r, int c, std::string v) {
    Cell cell;
    cell.value = std::move(v);
    b.set({r, c}, cell);
  };
  put(0, 0, "Name");
  put(0, 1, "Value");
  for (int r = 1; r < 40; ++r) {
    put(r, 0, "7");
    put(r, 1, "8");
  }
  Sheet s = b.build();
  PipelineConfig config = fast_config();
  config.compress.anchors.k = 1;
  auto enc = compress(s, config.compress);
  REQUIRE(enc.coord_map);
  REQUIRE(enc.coord_map->kept_rows.size() < 40);
  int last = static_cast<int>(enc.coord_map->kept_rows.size());

  ScriptedClient client({"[{'range': 'A1:B" + std::to_string(last) + "'}]"});
  DetectionResult r = run_detection(s, config, client);
  CHECK(r.ranges == std::vector<CellRange>{parse_range("A1:B40")});
  CHECK(client.requests()[0].prompt.find(config.prompts.detect.text.substr(0, 40)) == 0);
}

TEST_CASE("transport failures are retried then surfaced") {
  Sheet s = small_table();
  ScriptedClient client({"[{'range': 'A1:C10'}]"});
  client.fail_next(3);
  CHECK_THROWS_AS(run_detection(s, fast_config(), client), TransportError);
  CHECK(client.calls() == 3);
}

TEST_CASE("two-stage answer") {
  Sheet s = small_table();
  ScriptedClient client({"[{'range':'A1:C10'}]", "{[B3]}"});
  QaResult r = run_cos_qa(s, "What were sales in 2011?", fast_config(), client);
  CHECK(r.answer.expression == "B3");
  CHECK_FALSE(r.split);
  CHECK(r.region == parse_range("A1:C10"));
  REQUIRE(client.calls() == 2);
  auto requests = client.requests();
  CHECK(requests[0].prompt.find("Question: What were sales in 2011?") != std::string::npos);
  CHECK(requests[1].prompt.find("|A1,Year|B1,Sales|C1,Cost") != std::string::npos);
  CHECK(requests[1].prompt.find("(IntNum|") == std::string::npos);
  CHECK(requests[1].temperature == 0.0);
  CHECK(requests[1].max_tokens == 300);
}

TEST_CASE("stage-two answers are shifted into sheet coordinates") {
  SheetBuilder b;
  Cell title;
  title.value = "Report";
  b.set({0, 0}, title);
  for (int r = 3; r < 8; ++r)
    for (int c = 2; c < 5; ++c) {
      Cell cell;
      cell.value = r == 3 ? "H" + std::to_string(c) : std::to_string(r * c);
      b.set({r, c}, cell);
    }
  Sheet s = b.build();
  PipelineConfig config = fast_config();
  config.compress.modules = {};
  ScriptedClient client({"[{'range':'C4:E8'}]", "{[SUM(B2:B5)]}"});
  QaResult r = run_cos_qa(s, "total?", config, client);
  CHECK(r.answer.expression == "SUM(D5:D8)");
  CHECK(client.requests()[1].prompt.find("|A1,H2|B1,H3|C1,H4") != std::string::npos);
}

TEST_CASE("stage-one failure stops the pipeline") {
  Sheet s = small_table();
  ScriptedClient client({"I am not sure.", "{[B3]}"});
  try {
    run_cos_qa(s, "q", fast_config(), client);
    FAIL("expected a pipeline error");
  } catch (const PipelineError& e) {
    CHECK(std::string(e.what()).find("stage 1") != std::string::npos);
  }
  CHECK(client.calls() == 1);

  ScriptedClient empty({"[{'range':'A1:C10'}]"});
  CHECK_THROWS_AS(run_cos_qa(s, "", fast_config(), empty), PipelineError);
  CHECK(empty.calls() == 0);
}

TEST_CASE("header prediction") {
  CHECK(predict_header(from_rows({{"Year", "Sales"}, {"1", "2"}, {"3", "4"}})) == 1);
  CHECK(predict_header(from_rows({{"Revenue", "Revenue"}, {"Q1", "Q2"}, {"1", "2"}})) == 2);
  CHECK(predict_header(from_rows({{"1", "2"}, {"3", "4"}})) == 1);
  CHECK(predict_header(from_rows({{"a", "b"}, {"c", "d"}})) == 1);
  CHECK(predict_header(from_rows({{"a"}})) == 1);
}

TEST_CASE("splitting into windows") {
  Sheet s = small_table();
  PipelineConfig config = fast_config();
  ScriptedClient client({"none", "{[B3]}", "{[C2]}"});
  SplitOutcome out = split_and_answer("q", s, config, client);
  CHECK(out.header_rows == 1);
  REQUIRE(out.chunks.size() == 3);
  CHECK(out.chunks[0].first_row == 1);
  CHECK(out.chunks[0].last_row == 3);
  CHECK(out.chunks[2].first_row == 7);
  CHECK(out.chunks[2].last_row == 9);
  CHECK(out.chunks[0].answer.empty());
  // Chunk prompts are header plus three rows, so local row 3 of chunk 2 is region row 6.
  CHECK(out.chunks[1].answer.expression == "B6");
  CHECK(out.chunks[2].answer.expression == "C8");

  for (const auto& req : client.requests()) {
    CHECK(req.prompt.find("|A1,Year|B1,Sales|C1,Cost") != std::string::npos);
    CHECK(req.prompt.find("|A5,") == std::string::npos);
    CHECK(req.prompt.find("(IntNum|") == std::string::npos);
  }
}

TEST_CASE("windows cover every body row once") {
  for (int body = 0; body <= 20; ++body) {
    std::vector<std::vector<std::string>> rows = {{"Name", "Qty"}};
    for (int r = 0; r < body; ++r) rows.push_back({std::to_string(r), std::to_string(r + 1)});
    Sheet s = from_rows(rows);
    ScriptedClient client({"{[A1]}"}, true);
    SplitOutcome out = split_and_answer("q", s, fast_config(), client);
    std::vector<int> seen(s.rows(), 0);
    for (const auto& ch : out.chunks) {
      CHECK(ch.last_row - ch.first_row + 1 <= 3);
      for (int r = ch.first_row; r <= ch.last_row; ++r) ++seen[r];
    }
    int expected_chunks = body == 0 ? 0 : (body + 2) / 3;
    CHECK(static_cast<int>(out.chunks.size()) == expected_chunks);
    for (int r = out.header_rows; r < s.rows(); ++r) CHECK(seen[r] == 1);
    CHECK(client.calls() == out.chunks.size());
  }
}

TEST_CASE("stride shorter than the window overlaps chunks") {
  Sheet s = small_table();
  PipelineConfig config = fast_config();
  config.split.stride = 2;
  ScriptedClient client({"{[A1]}"}, true);
  SplitOutcome out = split_and_answer("q", s, config, client);
  CHECK(out.chunks.size() == 4);
  CHECK(out.chunks.back().last_row == 9);
  config.split.stride = 4;
  CHECK_THROWS_AS(split_and_answer("q", s, config, client), ConfigError);
}

TEST_CASE("parallel chunks give the same answers") {
  Sheet s = numeric_table(60, 5, 3);
  auto answer = [](const LlmRequest& req) {
    return "{[B" + std::to_string(2 + std::hash<std::string>{}(req.prompt) % 3) + "]}";
  };
  FunctionClient serial_client(answer);
  FunctionClient parallel_client(answer);
  PipelineConfig config = fast_config();
  SplitOutcome serial = split_and_answer("q", s, config, serial_client);
  config.split.parallelism = 4;
  SplitOutcome parallel = split_and_answer("q", s, config, parallel_client);
  REQUIRE(serial.chunks.size() == parallel.chunks.size());
  for (std::size_t i = 0; i < serial.chunks.size(); ++i) {
    CHECK(serial.chunks[i].first_row == parallel.chunks[i].first_row);
    CHECK(serial.chunks[i].answer.expression == parallel.chunks[i].answer.expression);
  }
}

TEST_CASE("large regions take the split path") {
  Sheet s = numeric_table(400, 8, 17);
  REQUIRE(encode_vanilla(s).token_count > 4096);
  PipelineConfig config = fast_config();
  config.compress.modules = {};
  ScriptedClient client({"[{'range':'A1:H401'}]", "none", "{[C3]}"}, true);
  QaResult r = run_cos_qa(s, "which?", config, client);
  CHECK(r.split);
  CHECK(r.header_rows == 1);
  CHECK(r.region_tokens > 4096);
  CHECK(r.chunks.size() == 134);
  CHECK(r.answer.expression == "C6");
  auto requests = client.requests();
  for (std::size_t i = 1; i < requests.size(); ++i) CHECK(requests[i].prompt.find("(IntNum|") == std::string::npos);
}

TEST_CASE("mock runs are byte-identical") {
  Sheet s = numeric_table(400, 8, 17);
  auto enc = compress(s);
  REQUIRE(enc.coord_map);
  CellRange extracted = enc.coord_map->extracted_bounds();
  std::string stage1 = "[{'range':'" + render_range(extracted) + "'}]";
  std::string first;
  for (int run = 0; run < 5; ++run) {
    ScriptedClient client({stage1, "{[B2]}"}, true);
    QaResult r = run_cos_qa(s, "q", fast_config(), client);
    CHECK(r.region == parse_range("A1:H401"));
    std::string trace = r.answer.expression;
    for (const auto& req : client.requests()) trace += "\x1f" + req.prompt;
    if (run == 0) first = trace;
    CHECK(trace == first);
  }
}
