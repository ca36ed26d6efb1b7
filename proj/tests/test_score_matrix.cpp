#include <catch_amalgamated.hpp>

#include <numeric>
#include <sstream>

#include "splithalf/errors.hpp"
#include "splithalf/score_matrix.hpp"
#include "test_support.hpp"

using namespace splithalf;

namespace {

ScoreMatrix parse(const std::string& text, CsvOptions options = {}) {
  std::istringstream in(text);
  return load_score_matrix(in, options);
}

ErrorKind parse_error(const std::string& text, std::string* message = nullptr) {
  try {
    parse(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  FAIL("expected a parse error");
  return ErrorKind::Degenerate;
}

}  // namespace

TEST_CASE("parses a minimal table") {
  const auto m = parse("0,1\n1,1");
  REQUIRE(m.examinees() == 2);
  REQUIRE(m.items() == 2);
  CHECK(m(0, 0) == 0);
  CHECK(m(0, 1) == 1);
  CHECK(m(1, 0) == 1);
  CHECK(m(1, 1) == 1);
}

TEST_CASE("non-binary cell reports its location") {
  std::string msg;
  CHECK(parse_error("0,2\n1,1", &msg) == ErrorKind::DomainViolation);
  CHECK(msg.find("row 1, column 2") != std::string::npos);
}

TEST_CASE("malformed tables are rejected") {
  CHECK(parse_error("0,1\n1,1,0") == ErrorKind::ShapeError);
  CHECK(parse_error("0,1\n1,") == ErrorKind::DomainViolation);
  CHECK(parse_error("0,1") == ErrorKind::TooSmall);
  CHECK(parse_error("0\n1\n1") == ErrorKind::TooSmall);
  CHECK(parse_error("0,yes\n1,1") == ErrorKind::DomainViolation);
  CHECK(parse_error("") == ErrorKind::TooSmall);
}

TEST_CASE("whitespace, CRLF, blank lines and delimiters") {
  const auto m = parse(" 1 ;0\r\n\n0; 1 \r\n", {.delimiter = ';'});
  CHECK(m.examinees() == 2);
  CHECK(m(0, 0) == 1);
  CHECK(m(1, 1) == 1);
}

TEST_CASE("header and row ids") {
  const auto m = parse("id,q1,q2,q3\nann,1,0,1\nbob,0,0,1\n",
                       {.has_header = true, .has_row_ids = true});
  CHECK(m.items() == 3);
  CHECK(m.item_ids() == std::vector<std::string>{"q1", "q2", "q3"});
  CHECK(m.examinee_ids() == std::vector<std::string>{"ann", "bob"});
  CHECK(m.examinee_label(1) == "bob");
}

TEST_CASE("constructor validates invariants") {
  CHECK_THROWS_AS(ScoreMatrix(2, 2, {0, 1, 1}), Error);
  CHECK_THROWS_AS(ScoreMatrix(1, 2, {0, 1}), Error);
  CHECK_THROWS_AS(ScoreMatrix(2, 2, {0, 1, 3, 1}), Error);
  CHECK_THROWS_AS(ScoreMatrix(2, 2, {0, 1, 1, 1}, {"a"}), Error);
}

TEST_CASE("item and examinee totals") {
  const ScoreMatrix m(2, 2, {1, 0, 1, 1});
  CHECK(item_totals(m).totals == std::vector<std::int64_t>{2, 1});
  CHECK(examinee_totals(m).totals == std::vector<std::int64_t>{1, 2});

  const ScoreMatrix ones(3, 4, std::vector<std::uint8_t>(12, 1));
  CHECK(examinee_totals(ones).totals == std::vector<std::int64_t>{4, 4, 4});
}

TEST_CASE("totals match a naive double loop") {
  for (std::uint32_t seed = 1; seed <= 10; ++seed) {
    const auto m = test_support::random_matrix(20, 8, seed);
    std::vector<std::int64_t> col(8, 0), row(20, 0);
    for (std::size_t i = 0; i < 20; ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        col[j] += m.entries()[i * 8 + j];
        row[i] += m.entries()[i * 8 + j];
      }
    const auto tau = item_totals(m);
    const auto x = examinee_totals(m);
    CHECK(tau.totals == col);
    CHECK(x.totals == row);
    CHECK(std::accumulate(tau.totals.begin(), tau.totals.end(), 0LL) ==
          std::accumulate(x.totals.begin(), x.totals.end(), 0LL));
  }
}

TEST_CASE("reference item totals") {
  const auto m = test_support::matrix_with_item_totals(
      test_support::reference_item_totals(), 912);
  CHECK(m.examinees() == 912);
  CHECK(m.items() == 50);
  const auto tau = item_totals(m);
  CHECK(std::accumulate(tau.totals.begin(), tau.totals.end(), 0LL) == 10022);
  CHECK(*std::min_element(tau.totals.begin(), tau.totals.end()) == 75);
  CHECK(*std::max_element(tau.totals.begin(), tau.totals.end()) == 488);
}

TEST_CASE("write then read is the identity") {
  const CsvOptions variants[] = {
      {},
      {.has_header = true},
      {.has_header = true, .has_row_ids = true, .delimiter = '\t'},
  };
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    const auto m = test_support::random_matrix(2 + seed % 7, 2 + seed % 5, seed);
    for (const auto& opts : variants) {
      std::ostringstream out;
      write_score_matrix(out, m, opts);
      std::istringstream in(out.str());
      const auto back = load_score_matrix(in, opts);
      CHECK(back.examinees() == m.examinees());
      CHECK(std::equal(back.entries().begin(), back.entries().end(),
                       m.entries().begin(), m.entries().end()));
      std::ostringstream again;
      write_score_matrix(again, back, opts);
      CHECK(again.str() == out.str());
    }
  }
}

TEST_CASE("912 x 50 file") {
  std::ostringstream out;
  write_score_matrix(out, test_support::random_matrix(912, 50, 3));
  const auto m = parse(out.str());
  CHECK(m.examinees() == 912);
  CHECK(m.items() == 50);
}
