#include "helpers.hpp"
#include "imprand/local.hpp"

using namespace imprand;

namespace {
const IntervalForecast kQuarter{R("1/4"), R("3/4")};
}

TEST_CASE("interval forecasts are validated") {
  CHECK_ERROR_KIND(IntervalForecast(R("1/2"), R("1/4")), ErrorKind::domain);
  CHECK_ERROR_KIND(IntervalForecast(R("-1/4"), R("1/4")), ErrorKind::domain);
  CHECK_ERROR_KIND(IntervalForecast(R("1/4"), R("5/4")), ErrorKind::domain);
  CHECK(kQuarter.str() == "[1/4, 3/4]");
  CHECK(IntervalForecast(R("1/2")).is_precise());
  CHECK(kQuarter.subset_of(IntervalForecast::vacuous()));
  CHECK_FALSE(IntervalForecast::vacuous().subset_of(kQuarter));
}

TEST_CASE("linear expectation") {
  CHECK(linear_expectation(R("1/2"), Gamble::identity()) == R("1/2"));
  CHECK(linear_expectation(R("0"), {R("3"), R("-5")}) == R("3"));
  CHECK(linear_expectation(R("1/4"), {R("-3/4"), R("1/4")}) == R("-1/2"));
  CHECK_ERROR_KIND(linear_expectation(R("3/2"), Gamble::identity()), ErrorKind::domain);
  CHECK_ERROR_KIND(linear_expectation(R("-1/2"), Gamble::identity()), ErrorKind::domain);
}

TEST_CASE("upper and lower expectation") {
  CHECK(upper_expectation(kQuarter, Gamble::identity()) == R("3/4"));
  CHECK(lower_expectation(kQuarter, Gamble::identity()) == R("1/4"));
  CHECK(upper_expectation(kQuarter, {R("1"), R("-1")}) == R("1/2"));
  CHECK(lower_expectation(kQuarter, {R("1"), R("-1")}) == R("-1/2"));
  const IntervalForecast precise(R("1/3"));
  const Gamble f{R("2"), R("-7/5")};
  CHECK(upper_expectation(precise, f) == linear_expectation(R("1/3"), f));
  CHECK(lower_expectation(precise, f) == linear_expectation(R("1/3"), f));
}

TEST_CASE("offered gambles") {
  CHECK(is_offered(kQuarter, {R("0"), R("0")}));
  CHECK_FALSE(is_offered(kQuarter, {R("1"), R("1")}));
  CHECK(is_offered(kQuarter, {R("-3/4"), R("1/4")}));
}

TEST_CASE("cone decomposition follows the canonical case split") {
  const auto up = cone_decompose(kQuarter, {R("-3/4"), R("1/4")});
  REQUIRE(up);
  CHECK(up->alpha == 0);
  CHECK(up->beta == 1);
  CHECK(up->q == R("3/4"));
  CHECK(up->reconstruct() == Gamble{R("-3/4"), R("1/4")});
  CHECK(up->admissible_for(kQuarter));

  const auto flat = cone_decompose(kQuarter, {R("-1"), R("-1")});
  REQUIRE(flat);
  CHECK(flat->alpha == 1);
  CHECK(flat->p == 0);
  CHECK(flat->beta == 1);
  CHECK(flat->q == 1);
  CHECK(flat->reconstruct() == Gamble{R("-1"), R("-1")});

  const auto down = cone_decompose(kQuarter, {R("1/8"), R("-1")});
  REQUIRE(down);
  CHECK(down->beta == 0);
  CHECK(down->alpha == R("9/8"));
  CHECK(down->p == R("1/9"));
  CHECK(down->reconstruct() == Gamble{R("1/8"), R("-1")});
  CHECK(down->admissible_for(kQuarter));

  CHECK_FALSE(cone_decompose(kQuarter, {R("1"), R("1")}));
  CHECK_FALSE(cone_decompose(kQuarter, {R("-1"), R("1")}));
}

TEST_CASE("zero gamble decomposes at every interval") {
  for (const auto& i : {IntervalForecast::vacuous(), IntervalForecast(R("0")), IntervalForecast(R("1")), kQuarter}) {
    const auto c = cone_decompose(i, {R("0"), R("0")});
    REQUIRE(c);
    CHECK(c->reconstruct() == Gamble{R("0"), R("0")});
    CHECK(c->admissible_for(i));
  }
}
