#include "helpers.hpp"
#include "imprand/generate.hpp"
#include "imprand/randomness.hpp"

using namespace imprand;

namespace {
const IntervalForecast kQuarter{R("1/4"), R("3/4")};
}

TEST_CASE("growth functions") {
  const auto lin = GrowthFunction::linear(R("1/100"));
  CHECK(lin(250) == R("5/2"));
  CHECK(lin.name() == "linear:1/100");
  const auto lg = GrowthFunction::log2_floor();
  CHECK(lg(0) == R("0"));
  CHECK(lg(1) == R("0"));
  CHECK(lg(1023) == R("9"));
  CHECK(lg(1024) == R("10"));
  const auto sq = GrowthFunction::sqrt_floor();
  CHECK(sq(99) == R("9"));
  CHECK(sq(100) == R("10"));
  const auto tab = GrowthFunction::table({R("0"), R("1"), R("3")});
  CHECK(tab(2) == R("3"));
  CHECK(tab(4) == R("7"));
  CHECK_ERROR_KIND(GrowthFunction::table({R("1"), R("1")}), ErrorKind::domain);
  CHECK_ERROR_KIND(GrowthFunction::table({R("2"), R("1"), R("3")}), ErrorKind::domain);
  CHECK_ERROR_KIND(GrowthFunction::linear(R("0")), ErrorKind::domain);
  CHECK(default_growth_functions().size() == 3);
}

TEST_CASE("battery on the unit strategy") {
  const Forecast quarter = make_stationary(kQuarter);
  const auto out = run_battery(canonical_path(CanonicalPath::alternating, 200), *quarter,
                               {Strategy::multiplicative(make_unit_multiplier())}, default_growth_functions());
  REQUIRE(out.size() == 1);
  CHECK(out[0].accepted);
  CHECK(out[0].max_capital == R("1"));
  CHECK(out[0].final_capital == R("1"));
  CHECK(out[0].argmax_step == 0);
  for (const auto& e : out[0].exceedances) CHECK_FALSE(e);
}

TEST_CASE("kelly_buy on an all-ones prefix") {
  const Forecast quarter = make_stationary(kQuarter);
  const auto out = run_battery(canonical_path(CanonicalPath::all_one, 20), *quarter,
                               {Strategy::multiplicative(make_kelly_buy(kQuarter, R("1/2")))},
                               {GrowthFunction::linear(R("1/10"))});
  REQUIRE(out.size() == 1);
  CHECK(out[0].accepted);
  CHECK(out[0].final_capital == R("7/6").pow(20));
  CHECK(out[0].max_capital == R("7/6").pow(20));
  CHECK(out[0].argmax_step == 20);
  // (7/6)^n >= n/10 with n/10 > 1 first at n = 11.
  CHECK(out[0].exceedances[0] == 11U);
}

TEST_CASE("battery rejections") {
  const Forecast quarter = make_stationary(kQuarter);
  const Situation path("0110");
  const auto out =
      run_battery(path, *quarter,
                  {Strategy::additive(R("1"), make_constant_increments({R("-1"), R("1")})),
                   Strategy::additive(R("2"), make_constant_increments({R("0"), R("0")})),
                   Strategy::additive(R("1"), make_constant_increments({R("-2"), R("-1")})),
                   Strategy::multiplicative(make_explicit_multiplier({{"01", {R("0"), R("4")}}}, 3))},
                  {});
  CHECK_FALSE(out[0].accepted);
  REQUIRE(out[0].violation);
  CHECK(out[0].violation->upper_expectation == R("1/2"));
  CHECK_FALSE(out[1].accepted);
  CHECK_FALSE(out[2].accepted);
  CHECK(out[2].rejection.find("negative") != std::string::npos);
  CHECK_FALSE(out[3].accepted);
  REQUIRE(out[3].violation);
  CHECK(out[3].violation->situation.bits() == "01");
}

TEST_CASE("church statistics on the alternating path") {
  const Forecast quarter = make_stationary(kQuarter);
  const PathPrefix path = canonical_path(CanonicalPath::alternating, 10000);
  const FreqReport all = church_statistic(path, *make_always(), *quarter);
  CHECK(all.selected == 10000);
  CHECK(all.frequency == R("1/2"));
  CHECK(all.lower_statistic == R("1/4"));
  CHECK(all.upper_statistic == R("-1/4"));
  CHECK(all.verdict == Verdict::pass);

  const FreqReport after_one = church_statistic(path, *make_follow_symbol(1), *quarter);
  CHECK(after_one.frequency == R("0"));
  CHECK(after_one.lower_statistic == R("-1/4"));
  CHECK(after_one.verdict == Verdict::fail_low);

  const FreqReport after_zero = church_statistic(path, *make_follow_symbol(0), *quarter);
  CHECK(after_zero.frequency == R("1"));
  CHECK(after_zero.verdict == Verdict::fail_high);

  const FreqReport never = church_statistic(path, *make_never(), *quarter);
  CHECK(never.selected == 0);
  CHECK_FALSE(never.frequency);
  CHECK(never.verdict == Verdict::insufficient_data);

  const FreqReport few = church_statistic(Situation("0101"), *make_always(), *quarter);
  CHECK(few.verdict == Verdict::insufficient_data);
  FrequencyOptions loose;
  loose.tolerance = R("1/4");
  CHECK(church_statistic(path, *make_follow_symbol(1), *quarter, loose).verdict == Verdict::pass);
  CHECK(to_string(Verdict::fail_high) == "fail_high");
}

TEST_CASE("church statistic with a varying forecast") {
  const Forecast alt = make_alternating(R("0"), R("1"));
  const PathPrefix path("1010");
  FrequencyOptions options;
  options.min_count = 1;
  const FreqReport r = church_statistic(path, *make_always(), *alt, options);
  CHECK(r.lower_statistic == R("0"));
  CHECK(r.upper_statistic == R("0"));
  CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("selection battery builder") {
  CHECK(build_selection_battery(R("1/4"), R("3/4"), {}, 10).empty());

  const Selection mask = make_temporal_mask({true, true, false, true, false, false});
  const auto battery = build_selection_battery(R("1/4"), R("3/4"), {make_counting_process(mask)}, 6);
  REQUIRE(battery.size() == 1);
  for (std::size_t n = 0; n < 6; ++n) {
    const std::string s(n, '1');
    CHECK(battery[0]->at(SituationView(s)) == mask->at(SituationView(s)));
  }

  // Zero everywhere except F("0101") = 1, so ΔF("010") = (0, 1) and only level 3 moves.
  std::map<std::string, Rational> table;
  for (std::size_t n = 0; n <= 4; ++n)
    for_each_situation(n, [&](SituationView s) { table[std::string(s.bits())] = R("0"); });
  table["0101"] = R("1");
  const auto explicit_battery =
      build_selection_battery(R("1/4"), R("3/4"), {make_explicit_process(table, 4)}, 4);
  REQUIRE(explicit_battery.size() == 1);
  for (std::size_t n = 0; n < 4; ++n) {
    const std::string s(n, '0');
    CHECK(explicit_battery[0]->at(SituationView(s)) == (n == 3));
  }

  // A constant process selects nothing under either rate, and the two masks collapse to one.
  const auto flat = build_selection_battery(R("1/4"), R("3/4"), {make_constant_process(R("1"))}, 3);
  REQUIRE(flat.size() == 1);
  CHECK_FALSE(flat[0]->at(SituationView("")));
}

TEST_CASE("interval estimation") {
  const PathPrefix alternating = canonical_path(CanonicalPath::alternating, 1000);
  const IntervalForecast wide = estimate_interval(alternating, default_selection_battery(), 30);
  CHECK(wide == IntervalForecast::vacuous());
  CHECK(wide.str() == "[0/1, 1/1]");
  const IntervalForecast single = estimate_interval(alternating, {make_always()}, 30);
  CHECK(single == IntervalForecast(R("1/2")));
  CHECK(estimate_interval(Situation("01"), {make_always()}, 30) == IntervalForecast::vacuous());
  const IntervalForecast agree = estimate_interval(canonical_path(CanonicalPath::all_one, 100),
                                                   default_selection_battery(), 30);
  CHECK(agree == IntervalForecast(R("1")));
  const SelectionFrequency f = selected_frequency(Situation("0110"), *make_follow_symbol(1));
  CHECK(f.selected == 2);
  CHECK(f.ones == 1);
  CHECK(f.frequency == R("1/2"));
}
