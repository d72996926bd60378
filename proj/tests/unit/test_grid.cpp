#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sheetcomp/error.hpp"
#include "sheetcomp/grid.hpp"

using namespace sheetcomp;

namespace {

Cell value(std::string v) {
  Cell c;
  c.value = std::move(v);
  return c;
}

}  // namespace

TEST_CASE("column names are bijective base 26") {
  CHECK(column_name(0) == "A");
  CHECK(column_name(25) == "Z");
  CHECK(column_name(26) == "AA");
  CHECK(column_name(51) == "AZ");
  CHECK(column_name(52) == "BA");
  CHECK(column_name(701) == "ZZ");
  CHECK(column_name(702) == "AAA");
  CHECK(column_name(16383) == "XFD");
  CHECK(parse_column("XFD") == 16383);
  CHECK(parse_column("aa") == 26);
}

TEST_CASE("column names agree with counting through the alphabet") {
  for (int col = 0; col < kMaxCols; ++col) {
    auto name = testing::column_name_by_counting(col);
    REQUIRE(column_name(col) == name);
    REQUIRE(parse_column(name) == col);
  }
}

TEST_CASE("A1 addresses parse and render") {
  CHECK(parse_a1("A1") == CellAddress{0, 0});
  CHECK(parse_a1("AB5") == CellAddress{4, 27});
  CHECK(parse_a1("$C$10") == CellAddress{9, 2});
  CHECK(parse_a1("xfd1048576") == CellAddress{kMaxRows - 1, kMaxCols - 1});
  CHECK(render_a1({4, 27}) == "AB5");

  for (const char* bad : {"", "A", "1", "A0", "1A", "A01", "XFE1", "A1048577", "A-1", "A1B", "A 1"})
    CHECK_THROWS_AS(parse_a1(bad), ParseError);
}

TEST_CASE("ranges normalize corners and render singles bare") {
  CHECK(parse_range("A1:D5") == CellRange{0, 0, 4, 3});
  CHECK(parse_range("D5:A1") == CellRange{0, 0, 4, 3});
  CHECK(parse_range("D1:A5") == CellRange{0, 0, 4, 3});
  CHECK(parse_range("B2") == CellRange{1, 1, 1, 1});
  CHECK(render_range({1, 1, 1, 1}) == "B2");
  CHECK(render_range({0, 0, 4, 3}) == "A1:D5");
  CHECK_THROWS_AS(parse_range("A1:"), ParseError);
  CHECK_THROWS_AS(parse_range("A1:B2:C3"), ParseError);
}

TEST_CASE("random addresses round-trip") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> row(0, kMaxRows - 1), col(0, kMaxCols - 1);
  for (int i = 0; i < 5000; ++i) {
    CellAddress a{row(rng), col(rng)};
    REQUIRE(parse_a1(render_a1(a)) == a);
  }
}

TEST_CASE("range geometry") {
  CellRange r{1, 1, 3, 4};
  CHECK(r.height() == 3);
  CHECK(r.width() == 4);
  CHECK(r.area() == 12);
  CHECK(r.contains(CellAddress{3, 4}));
  CHECK_FALSE(r.contains(CellAddress{0, 1}));
  CHECK(r.overlaps({3, 4, 5, 5}));
  CHECK_FALSE(r.overlaps({4, 0, 5, 5}));
}

TEST_CASE("sheet validates shape and merges") {
  CHECK_THROWS_AS(Sheet("s", 2, 2, std::vector<Cell>(3)), IntegrityError);
  CHECK_THROWS_AS(Sheet("s", 0, 2, {}), IntegrityError);

  std::vector<Cell> cells(4);
  cells[0].merge = CellRange{0, 0, 1, 1};
  CHECK_NOTHROW(Sheet("s", 2, 2, cells));

  std::vector<Cell> misplaced(4);
  misplaced[1].merge = CellRange{0, 0, 1, 1};
  CHECK_THROWS_AS(Sheet("s", 2, 2, misplaced), IntegrityError);

  std::vector<Cell> spill(4);
  spill[0].merge = CellRange{0, 0, 2, 1};
  CHECK_THROWS_AS(Sheet("s", 2, 2, spill), IntegrityError);
}

TEST_CASE("builder trims trailing empties and rejects duplicates") {
  SheetBuilder b("t");
  CHECK(b.set({1, 1}, value("x")));
  CHECK_FALSE(b.set({1, 1}, value("y")));
  CHECK(b.set({5, 7}, value("")));
  auto s = b.build();
  CHECK(s.rows() == 2);
  CHECK(s.cols() == 2);
  CHECK(s.at(1, 1).value == "x");
  CHECK(s.at(0, 0).empty());

  auto empty = SheetBuilder("e").build();
  CHECK(empty.rows() == 1);
  CHECK(empty.cols() == 1);
}

TEST_CASE("select and crop re-index") {
  SheetBuilder b;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 3; ++c) b.set({r, c}, value(render_a1({r, c})));
  auto s = b.build();

  std::vector<int> rows{0, 2, 3}, cols{1, 2};
  auto sel = s.select(rows, cols);
  CHECK(sel.rows() == 3);
  CHECK(sel.cols() == 2);
  CHECK(sel.at(1, 0).value == "B3");
  CHECK(sel.at(2, 1).value == "C4");

  auto crop = s.crop({1, 1, 2, 2});
  CHECK(crop.rows() == 2);
  CHECK(crop.at(0, 0).value == "B2");
  CHECK(crop.at(1, 1).value == "C3");
  CHECK_THROWS_AS(s.crop({0, 0, 9, 0}), RangeError);
}

TEST_CASE("select clips merges to kept lines") {
  std::vector<Cell> cells(9);
  cells[0].value = "head";
  cells[0].merge = CellRange{0, 0, 0, 2};
  Sheet s("m", 3, 3, cells);
  std::vector<int> rows{0, 1}, cols{0, 2};
  auto sel = s.select(rows, cols);
  REQUIRE(sel.at(0, 0).merge.has_value());
  CHECK(*sel.at(0, 0).merge == CellRange{0, 0, 0, 1});
}
