#include <doctest.h>

#include <stdexcept>

#include "degpd/data.hpp"

using namespace degpd;

TEST_CASE("parse one count per line") {
  const CountSample sample = parse_counts("0\n0\n3\n", "test");
  CHECK(sample.size() == 3);
  REQUIRE(sample.frequencies().size() == 2);
  CHECK(sample.frequencies()[0] == std::pair<std::int64_t, std::int64_t>{0, 2});
  CHECK(sample.frequencies()[1] == std::pair<std::int64_t, std::int64_t>{3, 1});
}

TEST_CASE("parse value,count format with optional header") {
  const CountSample with_header = parse_counts("value,count\n0,2\n3,1\n", "test");
  const CountSample bare = parse_counts("0,2\n3,1\n", "test");
  const CountSample lines = parse_counts("0\n0\n3\n", "test");
  CHECK(with_header.frequencies() == lines.frequencies());
  CHECK(bare.frequencies() == lines.frequencies());
  CHECK(with_header.size() == 3);
  CHECK(with_header.fingerprint() == lines.fingerprint());
}

TEST_CASE("parse errors name the offending line") {
  CHECK_THROWS_WITH_AS(parse_counts("0\n-1\n2\n", "bad"),
                       doctest::Contains("bad:2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_counts("1\nx\n", "bad"),
                       doctest::Contains("bad:2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_counts("value,count\n1,huh\n", "bad"),
                       doctest::Contains("bad:2"), std::runtime_error);
  CHECK_THROWS_AS(parse_counts("", "empty"), std::runtime_error);
  CHECK_THROWS_AS(parse_counts("\n\n", "empty"), std::runtime_error);
}

TEST_CASE("blank lines and CRLF are tolerated") {
  const CountSample sample = parse_counts("\n0\r\n\n3\r\n", "test");
  CHECK(sample.size() == 2);
  CHECK(sample.max_value() == 3);
}

TEST_CASE("summary statistics") {
  const CountSample sample = parse_counts("0,4\n2,3\n10,1\n", "test");
  CHECK(sample.size() == 8);
  CHECK(sample.count_of_zero() == 4);
  CHECK(sample.zero_fraction() == 0.5);
  CHECK(sample.mean() == 2.0);
  CHECK(sample.mean_of_positive() == 4.0);
  CHECK(sample.sorted_values() ==
        std::vector<std::int64_t>{0, 0, 0, 0, 2, 2, 2, 10});
}

TEST_CASE("exceedances shift and filter") {
  const CountSample sample = parse_counts("0,4\n2,3\n10,1\n", "test");
  const CountSample exc = sample.exceedances_above(2);
  CHECK(exc.size() == 4);
  CHECK(exc.frequencies()[0] == std::pair<std::int64_t, std::int64_t>{0, 3});
  CHECK(exc.frequencies()[1] == std::pair<std::int64_t, std::int64_t>{8, 1});
  CHECK_THROWS_WITH_AS(sample.exceedances_above(11),
                       doctest::Contains("no exceedances"), std::runtime_error);
}

TEST_CASE("fingerprint is permutation-invariant and value-sensitive") {
  const CountSample a(std::vector<std::int64_t>{5, 1, 1, 9, 0});
  const CountSample b(std::vector<std::int64_t>{0, 9, 1, 5, 1});
  const CountSample c(std::vector<std::int64_t>{0, 9, 1, 5, 2});
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() != c.fingerprint());
}

TEST_CASE("negative observations are rejected at construction") {
  CHECK_THROWS_AS(CountSample(std::vector<std::int64_t>{1, -2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CountSample::from_frequencies({{3, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(CountSample::from_frequencies({{-1, 2}}), std::invalid_argument);
}
