#include "helpers.hpp"
#include "imprand/process.hpp"

using namespace imprand;

namespace {
const IntervalForecast kQuarter{R("1/4"), R("3/4")};
SituationView V(const char* s) { return SituationView(s); }
}  // namespace

TEST_CASE("selections") {
  CHECK(make_always()->at(V("")));
  CHECK_FALSE(make_never()->at(V("101")));
  const Selection mask = make_temporal_mask({true, false, true});
  CHECK(mask->at(V("")));
  CHECK_FALSE(mask->at(V("1")));
  CHECK(mask->at(V("01")));
  CHECK(mask->temporal());
  CHECK_ERROR_KIND(mask->at(V("011")), ErrorKind::depth);
  const Selection one = make_follow_symbol(1);
  CHECK_FALSE(one->at(V("")));
  CHECK(one->at(V("01")));
  CHECK_FALSE(one->at(V("10")));
  CHECK_FALSE(one->temporal());
  CHECK_ERROR_KIND(make_follow_symbol(2), ErrorKind::domain);
}

TEST_CASE("real processes") {
  CHECK(make_constant_process(R("5/2"))->at(V("0101")) == R("5/2"));
  const Process t = make_temporal_process({R("1"), R("2"), R("4")});
  CHECK(t->at(V("10")) == R("4"));
  CHECK_ERROR_KIND(t->at(V("101")), ErrorKind::depth);
  const Process count = make_counting_process(make_follow_symbol(0));
  CHECK(count->at(V("")) == R("1"));
  // Selected prefixes of "0010" before its end: "0" and "00".
  CHECK(count->at(V("0010")) == R("3"));
  const Process table = make_explicit_process({{"", R("1")}, {"0", R("2")}, {"1", R("1/2")}}, 1);
  CHECK(table->at(V("1")) == R("1/2"));
  CHECK_ERROR_KIND(make_explicit_process({{"", R("1")}}, 1)->at(V("0")), ErrorKind::depth);
  CHECK_ERROR_KIND(make_explicit_process({{"00", R("1")}}, 1), ErrorKind::domain);
}

TEST_CASE("kelly multipliers") {
  const Gamble buy = make_kelly_buy(kQuarter, R("1"))->at(V(""));
  CHECK(buy.at0 == R("0"));
  CHECK(buy.at1 == R("4/3"));
  const Gamble half = make_kelly_buy(kQuarter, R("1/2"))->at(V("0"));
  CHECK(half.at0 == R("1/2"));
  CHECK(half.at1 == R("7/6"));
  const Gamble sell = make_kelly_sell(kQuarter, R("1/2"))->at(V(""));
  CHECK(sell.at0 == R("7/6"));
  CHECK(sell.at1 == R("1/2"));
  CHECK_ERROR_KIND(make_kelly_buy(IntervalForecast(R("0")), R("1/2")), ErrorKind::domain);
  CHECK_ERROR_KIND(make_kelly_sell(IntervalForecast(R("1")), R("1/2")), ErrorKind::domain);
  CHECK_ERROR_KIND(make_kelly_buy(kQuarter, R("3/2")), ErrorKind::domain);
  // Both stay at or below 1 in expectation over the interval.
  for (const char* p : {"1/4", "1/2", "3/4"}) {
    CHECK(linear_expectation(R(p), half) <= R("1"));
    CHECK(linear_expectation(R(p), sell) <= R("1"));
  }
}

TEST_CASE("explicit, gated and generated multipliers") {
  const Multiplier table = make_explicit_multiplier({{"1", {R("2"), R("0")}}}, 1);
  CHECK(table->at(V("")) == Gamble{R("1"), R("1")});
  CHECK(table->at(V("1")) == Gamble{R("2"), R("0")});
  CHECK_ERROR_KIND(make_explicit_multiplier({{"", {R("-1"), R("2")}}}, 0), ErrorKind::domain);
  const Multiplier gated = make_gated_multiplier(make_follow_symbol(1), make_kelly_buy(kQuarter, R("1")));
  CHECK(gated->at(V("0")) == Gamble{R("1"), R("1")});
  CHECK(gated->at(V("01")) == Gamble{R("0"), R("4/3")});
  const Process generated = make_multiplier_generated(make_kelly_buy(kQuarter, R("1")));
  CHECK(generated->at(V("")) == R("1"));
  CHECK(generated->at(V("11")) == R("16/9"));
  CHECK(generated->at(V("110")) == R("0"));
}

TEST_CASE("strategies") {
  const Strategy unit = Strategy::multiplicative(make_unit_multiplier());
  CHECK(unit.is_multiplicative());
  CHECK(unit.uniform());
  CHECK(unit.capital_at(V("0110")) == R("1"));
  const Strategy add = Strategy::additive(R("2"), make_constant_increments({R("-1"), R("1")}), StrategyClass::C);
  CHECK_FALSE(add.is_multiplicative());
  CHECK(add.class_tag() == StrategyClass::C);
  CHECK(add.capital_at(V("110")) == R("3"));
  CHECK(add.increment(V(""), R("2")) == Gamble{R("-1"), R("1")});
  CHECK(to_string(StrategyClass::wML) == "wML");
  CHECK(strategy_class_from_string("S") == StrategyClass::S);
  CHECK_ERROR_KIND(strategy_class_from_string("X"), ErrorKind::parse);
}
