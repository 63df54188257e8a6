#include "helpers.hpp"
#include "imprand/forecast.hpp"

using namespace imprand;

namespace {
const IntervalForecast kQuarter{R("1/4"), R("3/4")};

IntervalForecast at(const ForecastSystem& f, const char* s) { return f.at(SituationView(s)); }
}  // namespace

TEST_CASE("stationary forecast is the same everywhere") {
  const Forecast f = make_stationary(kQuarter);
  CHECK(at(*f, "") == kQuarter);
  CHECK(at(*f, "0110") == kQuarter);
  CHECK(f->stationary());
  CHECK(f->temporal());
  CHECK_FALSE(f->levels());
}

TEST_CASE("alternating forecast uses p on odd levels and q on even levels") {
  const Forecast f = make_alternating(R("1/4"), R("3/4"));
  CHECK(at(*f, "0") == IntervalForecast(R("1/4")));
  CHECK(at(*f, "") == IntervalForecast(R("3/4")));
  CHECK(at(*f, "11") == IntervalForecast(R("3/4")));
  CHECK(at(*f, "101") == IntervalForecast(R("1/4")));
  CHECK(f->temporal());
}

TEST_CASE("witness forecast reads the next witness symbol") {
  const Forecast f = make_witness(R("1/4"), R("3/4"), Situation("110"));
  CHECK(at(*f, "") == IntervalForecast(R("3/4")));
  CHECK(at(*f, "0") == IntervalForecast(R("3/4")));
  CHECK(at(*f, "01") == IntervalForecast(R("1/4")));
  CHECK(at(*f, "11") == IntervalForecast(R("1/4")));
  CHECK(f->levels() == 3U);
  CHECK_ERROR_KIND(at(*f, "000"), ErrorKind::depth);
  CHECK_ERROR_KIND(make_witness(R("3/4"), R("1/4"), Situation("1")), ErrorKind::domain);
  CHECK_ERROR_KIND(make_witness(R("1/2"), R("1/2"), Situation("1")), ErrorKind::domain);
}

TEST_CASE("perfect forecast predicts the path's next symbol") {
  const Forecast f = make_perfect(Situation("010"));
  CHECK(at(*f, "") == IntervalForecast(R("0")));
  CHECK(at(*f, "0") == IntervalForecast(R("1")));
  CHECK(at(*f, "01") == IntervalForecast(R("0")));
  CHECK_ERROR_KIND(at(*f, "010"), ErrorKind::depth);
}

TEST_CASE("temporal table") {
  const Forecast f = make_temporal_table({kQuarter, IntervalForecast(R("1/2"))});
  CHECK(at(*f, "") == kQuarter);
  CHECK(at(*f, "1") == IntervalForecast(R("1/2")));
  CHECK(f->levels() == 2U);
  CHECK_ERROR_KIND(at(*f, "11"), ErrorKind::depth);
}

TEST_CASE("explicit table fills gaps with the vacuous forecast") {
  const Forecast f = make_explicit_forecast({{"", kQuarter}, {"1", IntervalForecast(R("1/3"))}}, 2);
  CHECK(at(*f, "") == kQuarter);
  CHECK(at(*f, "1") == IntervalForecast(R("1/3")));
  CHECK(at(*f, "0") == IntervalForecast::vacuous());
  CHECK(at(*f, "01") == IntervalForecast::vacuous());
  CHECK_FALSE(f->temporal());
  CHECK_ERROR_KIND(make_explicit_forecast({{"011", kQuarter}}, 2), ErrorKind::domain);
}

TEST_CASE("containment") {
  const Forecast quarter = make_stationary(kQuarter);
  const Forecast vacuous = make_stationary(IntervalForecast::vacuous());
  const Forecast witness = make_witness(R("1/4"), R("3/4"), Situation("0110100"));
  CHECK(contains(*quarter, *vacuous, 5));
  CHECK_FALSE(contains(*vacuous, *quarter, 5));
  CHECK(contains(*witness, *quarter, 6));
  CHECK_FALSE(contains(*quarter, *witness, 3));
  const Forecast table = make_explicit_forecast({{"01", IntervalForecast(R("1/2"))}}, 3);
  CHECK(contains(*table, *vacuous, 3));
  CHECK_FALSE(contains(*vacuous, *table, 3));
  CHECK_ERROR_KIND(contains(*table, *vacuous, 20, 16), ErrorKind::resource);
}

TEST_CASE("temporal kinds agree across all situations of a level") {
  const Forecast f = make_witness(R("1/5"), R("4/5"), Situation("10110"));
  for (std::size_t n = 0; n < 5; ++n) {
    const IntervalForecast first = at(*f, std::string(n, '0').c_str());
    for_each_situation(n, [&](SituationView s) { CHECK(f->at(s) == first); });
  }
}
