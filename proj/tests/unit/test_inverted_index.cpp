#include <doctest.h>

#include <map>

#include "generators.hpp"
#include "oracles.hpp"
#include "sheetcomp/error.hpp"
#include "sheetcomp/inverted_index.hpp"
#include "sheetcomp/tokenizer.hpp"
#include "sheetcomp/vanilla.hpp"

using namespace sheetcomp;
using namespace sheetcomp::testing;

namespace {

Sheet values(int rows, int cols, std::vector<std::string> v) {
  std::vector<Cell> cells(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) cells[i].value = v[i];
  return Sheet("Sheet1", rows, cols, std::move(cells));
}

void check_index(const Sheet& s) {
  ValueIndex index = invert(s);
  std::map<std::string, int> counts;
  for (const Cell& c : s.cells())
    if (!c.empty()) ++counts[c.value];
  CHECK(index.entries().size() == counts.size());
  for (const auto& entry : index.entries()) {
    CHECK_FALSE(entry.value.empty());
    CHECK(exact_cover(s, entry.value, entry.ranges));
    long long area = 0;
    for (const auto& r : entry.ranges) area += r.area();
    CHECK(area == counts[entry.value]);
  }
  Sheet back = restore(index, s.name());
  REQUIRE(back.rows() == s.rows());
  REQUIRE(back.cols() == s.cols());
  for (int r = 0; r < s.rows(); ++r)
    for (int c = 0; c < s.cols(); ++c) CHECK(back.at(r, c).value == s.at(r, c).value);
}

}  // namespace

TEST_CASE("inversion examples") {
  Sheet s = values(3, 1, {"Year", "Year", ""});
  ValueIndex index = invert(s);
  REQUIRE(index.entries().size() == 1);
  CHECK(index.entries()[0].value == "Year");
  CHECK(index.entries()[0].ranges == std::vector<CellRange>{parse_range("A1:A2")});
  CHECK(render_index(index) == "(Year|A1:A2)");
  check_index(s);

  Sheet checker = values(2, 2, {"x", "y", "y", "x"});
  index = invert(checker);
  REQUIRE(index.entries().size() == 2);
  CHECK(index.find("x")->ranges == std::vector<CellRange>{parse_range("A1"), parse_range("B2")});
  CHECK(index.find("y")->ranges == std::vector<CellRange>{parse_range("B1"), parse_range("A2")});
  CHECK(render_index(index) == "(x|A1,B2)\n(y|B1,A2)");
  CHECK(render_index(index, IndexStyle::Qa) == "(x|A1,B2) (y|B1,A2)");

  Sheet distinct = values(2, 2, {"a", "b", "c", "d"});
  index = invert(distinct);
  CHECK(index.entries().size() == 4);
  for (const auto& e : index.entries()) CHECK(e.ranges.size() == 1);
}

TEST_CASE("greedy cover grows right then down") {
  Sheet s = values(3, 3, {"v", "v", "w", "v", "v", "v", "v", "v", "v"});
  ValueIndex index = invert(s);
  CHECK(index.find("v")->ranges == std::vector<CellRange>{parse_range("A1:B3"), parse_range("C2:C3")});
}

TEST_CASE("entry order follows first occurrence") {
  Sheet s = values(2, 2, {"", "b", "a", "b"});
  ValueIndex index = invert(s);
  REQUIRE(index.entries().size() == 2);
  CHECK(index.entries()[0].value == "b");
  CHECK(index.entries()[1].value == "a");
  CHECK(render_index(index) == "(b|B1:B2)\n(a|A2)");
}

TEST_CASE("restore edge cases") {
  ValueIndex empty(2, 2);
  CHECK(render_index(empty).empty());
  Sheet blank = restore(empty);
  CHECK(blank.rows() == 2);
  CHECK(blank.cols() == 2);
  for (const Cell& c : blank.cells()) CHECK(c.empty());

  ValueIndex bad(3, 3);
  bad.add("a", parse_range("A1:B2"));
  bad.add("b", parse_range("B2"));
  CHECK_THROWS_AS(restore(bad), IntegrityError);

  ValueIndex outside(2, 2);
  outside.add("a", parse_range("C1"));
  CHECK_THROWS_AS(restore(outside), IntegrityError);

  CHECK_THROWS_AS(empty.add("", parse_range("A1")), IntegrityError);
}

TEST_CASE("values are compared exactly") {
  Sheet s = values(1, 3, {"a", "a ", "A"});
  CHECK(invert(s).entries().size() == 3);
  check_index(s);
}

TEST_CASE("round trip and exact cover over random sheets") {
  Rng rng(99);
  std::uniform_int_distribution<int> dim(1, 14);
  for (int round = 0; round < 1000; ++round) {
    double dup = (round % 4) * 0.3;
    double empty = (round % 5) * 0.2;
    check_index(random_value_sheet(rng, dim(rng), dim(rng), dup, empty));
  }
  std::vector<Cell> uniform(30);
  for (auto& c : uniform) c.value = "same";
  check_index(Sheet("U", 5, 6, uniform));
}

TEST_CASE("duplicated runs render shorter than vanilla") {
  Rng rng(4);
  for (int round = 0; round < 50; ++round) {
    int rows = 10, cols = 6;
    std::vector<std::string> v(rows * cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) v[r * cols + c] = c < 3 ? "Pending" : "n" + std::to_string(rng() % 1000);
    Sheet s = values(rows, cols, v);
    DefaultTokenizer tok;
    CHECK(tok.count(render_index(invert(s))) < encode_vanilla(s).token_count);
  }
}

TEST_CASE("json dump") {
  Sheet s = values(2, 2, {"a", "a", "", "q\"x"});
  CHECK(index_to_json(invert(s)) == R"({"a":["A1:B1"],"q\"x":["B2"]})");
}
