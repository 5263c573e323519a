#include <stdexcept>
#include "doctest.h"
#include "evofs/csv.hpp"

using namespace evofs;

TEST_CASE("plain csv with header") {
  const CsvGrid g = parse_csv("a,b,c\n1,2,3\n4,5,6\n", true);
  REQUIRE(g.header.size() == 3);
  CHECK(g.header[1] == "b");
  REQUIRE(g.rows.size() == 2);
  CHECK(g.rows[1][2] == "6");
}

TEST_CASE("header names are trimmed") {
  const CsvGrid g = parse_csv(" Flow ID , Label \nx,y\n", true);
  CHECK(g.header[0] == "Flow ID");
  CHECK(g.header[1] == "Label");
}

TEST_CASE("quoted fields keep commas, quotes and newlines") {
  const CsvGrid g =
      parse_csv("a,b\n\"x,y\",\"he said \"\"hi\"\"\"\n\"line1\nline2\",z\n", true);
  REQUIRE(g.rows.size() == 2);
  CHECK(g.rows[0][0] == "x,y");
  CHECK(g.rows[0][1] == "he said \"hi\"");
  CHECK(g.rows[1][0] == "line1\nline2");
  CHECK(g.rows[1][1] == "z");
}

TEST_CASE("crlf endings and missing final newline both work") {
  const CsvGrid g = parse_csv("a,b\r\n1,2\r\n3,4", true);
  REQUIRE(g.rows.size() == 2);
  CHECK(g.rows[1][0] == "3");
  CHECK(g.rows[1][1] == "4");
}

TEST_CASE("empty fields survive") {
  const CsvGrid g = parse_csv("a,b,c\n,,\n1,,3\n", true);
  CHECK(g.rows[0][0].empty());
  CHECK(g.rows[1][1].empty());
  CHECK(g.rows[1][2] == "3");
}

TEST_CASE("headerless mode returns every record as data") {
  const CsvGrid g = parse_csv("1,2\n3,4\n", false);
  CHECK(g.header.empty());
  REQUIRE(g.rows.size() == 2);
}

TEST_CASE("ragged rows and unterminated quotes are rejected") {
  CHECK_THROWS_WITH_AS(parse_csv("a,b\n1,2,3\n", true),
                       doctest::Contains("expected 2"), std::runtime_error);
  CHECK_THROWS(parse_csv("a,b\n\"unclosed,2\n", true));
  CHECK_THROWS(parse_csv("", true));  // no header row at all
}

TEST_CASE("read_csv reports unreadable paths") {
  CHECK_THROWS_WITH_AS(read_csv("/nonexistent/file.csv", true),
                       doctest::Contains("cannot open"), std::runtime_error);
}
