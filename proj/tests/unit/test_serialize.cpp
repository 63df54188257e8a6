#include <fstream>

#include "helpers.hpp"
#include "imprand/global.hpp"
#include "imprand/randomness.hpp"
#include "imprand/serialize.hpp"

using namespace imprand;
using nlohmann::json;

namespace {
const IntervalForecast kQuarter{R("1/4"), R("3/4")};
}

TEST_CASE("scalars, intervals and gambles") {
  CHECK(rational_from_json(json("3/4")) == R("3/4"));
  CHECK(rational_from_json(json(2)) == R("2"));
  CHECK_ERROR_KIND(rational_from_json(json(0.5)), ErrorKind::parse);
  CHECK_ERROR_KIND(rational_from_json(json("1/0")), ErrorKind::parse);
  CHECK(interval_from_json(json::parse(R"({"lower":"1/4","upper":"3/4"})")) == kQuarter);
  CHECK(interval_from_json(json::parse(R"(["1/4","3/4"])")) == kQuarter);
  CHECK_ERROR_KIND(interval_from_json(json::parse(R"({"lower":"3/4","upper":"1/4"})")), ErrorKind::domain);
  CHECK(gamble_from_json(json::parse(R"(["-1", "1/2"])")) == Gamble{R("-1"), R("1/2")});
  CHECK(to_json(R("3")) == "3/1");
  CHECK(to_json(kQuarter) == json::parse(R"({"lower":"1/4","upper":"3/4"})"));
  CHECK_ERROR_KIND(parse_json_text("{"), ErrorKind::parse);
}

TEST_CASE("forecast specs round-trip through JSON") {
  for (const char* text :
       {R"({"kind":"stationary","lower":"1/4","upper":"3/4"})", R"({"kind":"alternating","p":"1/4","q":"3/4"})",
        R"({"kind":"witness","p":"1/4","q":"3/4","witness":"110"})", R"({"kind":"perfect","path":"010"})",
        R"({"kind":"temporal_table","levels":[{"lower":"0","upper":"1"},{"lower":"1/2","upper":"1/2"}]})",
        R"({"kind":"explicit_table","depth":1,"table":{"":{"lower":"1/4","upper":"3/4"}}})"}) {
    const Forecast f = parse_forecast(json::parse(text));
    const Forecast again = parse_forecast(f->to_json());
    for_each_situation(1, [&](SituationView s) {
      CHECK(f->at(s) == again->at(s));
      CHECK(f->at(SituationView()) == again->at(SituationView()));
    });
  }
  CHECK_ERROR_KIND(parse_forecast(json::parse(R"({"kind":"mystery"})")), ErrorKind::parse);
  CHECK_ERROR_KIND(parse_forecast(json::parse(R"({"kind":"stationary","lower":"1/4"})")), ErrorKind::parse);
  CHECK_ERROR_KIND(parse_forecast(json::parse(R"({"kind":"witness","p":"1/4","q":"3/4","witness":"12"})")),
                   ErrorKind::parse);
}

TEST_CASE("witness files resolve against the base directory") {
  ParseContext ctx;
  ctx.base_dir = IMPRAND_TEST_DATA;
  std::vector<std::string> loaded;
  ctx.loaded_files = &loaded;
  const Forecast f = parse_forecast(json::parse(R"({"kind":"witness","p":"1/4","q":"3/4","witness_file":"w110.path"})"), ctx);
  CHECK(f->at(SituationView("01")) == IntervalForecast(R("1/4")));
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].ends_with("w110.path"));
  CHECK_ERROR_KIND(parse_forecast(json::parse(R"({"kind":"perfect","path_file":"missing.path"})"), ctx), ErrorKind::parse);
}

TEST_CASE("strategies, selections and processes") {
  const Strategy kelly = parse_strategy(json::parse(R"({"kind":"kelly_buy","lower":"1/4","upper":"3/4","stake":"1"})"));
  CHECK(kelly.is_multiplicative());
  CHECK(kelly.capital_at(SituationView("11")) == R("16/9"));
  const Strategy nested = parse_strategy(json::parse(
      R"({"kind":"multiplicative","class":"wML","multiplier":{"kind":"kelly_sell","I":{"lower":"1/4","upper":"3/4"},"stake":"1/2"}})"));
  CHECK(nested.class_tag() == StrategyClass::wML);
  CHECK(nested.capital_at(SituationView("0")) == R("7/6"));
  const Strategy additive = parse_strategy(json::parse(
      R"({"kind":"additive","initial":"2","increments":{"kind":"constant","gamble":["-1","1"]}})"));
  CHECK(additive.capital_at(SituationView("11")) == R("4"));
  CHECK_ERROR_KIND(parse_strategy(json::parse(R"({"kind":"unit","class":"XYZ"})")), ErrorKind::parse);
  CHECK(parse_strategy(kelly.to_json()).capital_at(SituationView("11")) == R("16/9"));

  const auto list = parse_strategy_list(json::parse(R"({"strategies":[{"kind":"unit"},{"kind":"kelly_buy","lower":"1/4","upper":"3/4","stake":"1/2"}]})"));
  CHECK(list.size() == 2);

  const auto sels = parse_selection_list(json::parse(
      R"([{"kind":"always"},{"kind":"never"},{"kind":"temporal_mask","bits":"101"},{"kind":"follow_symbol","symbol":1},
          {"kind":"from_process","process":{"kind":"counting_from_selection","selection":{"kind":"temporal_mask","bits":[0,1]}},"r":"1/2"}])"));
  REQUIRE(sels.size() == 5);
  CHECK(sels[2]->at(SituationView("01")));
  CHECK(sels[3]->at(SituationView("1")));
  CHECK_FALSE(sels[4]->at(SituationView("")));
  CHECK(sels[4]->at(SituationView("0")));

  const auto procs = parse_process_list(json::parse(
      R"({"processes":[{"kind":"constant","value":"3"},{"kind":"temporal_table","values":["1","2"]},
          {"kind":"explicit_table","depth":1,"table":{"":"1","0":"2","1":"1/2"}},
          {"kind":"multiplier_generated","multiplier":{"kind":"unit"}}]})"));
  REQUIRE(procs.size() == 4);
  CHECK(procs[1]->at(SituationView("1")) == R("2"));
  CHECK(procs[2]->at(SituationView("1")) == R("1/2"));
}

TEST_CASE("depth gambles, events and growth functions") {
  const DepthGamble g = parse_depth_gamble(json::parse(R"({"depth":2,"payoff":{"00":"0","01":"1","10":"1","11":"0"}})"));
  CHECK(g.at("01") == R("1"));
  const ClopenEvent e = parse_event(json::parse(R"({"depth":1,"members":["1"]})"));
  CHECK(e.members().size() == 1);
  CHECK_ERROR_KIND(parse_depth_gamble(json::parse(R"({"depth":2,"payoff":{"00":"0"}})")), ErrorKind::domain);
  CHECK(parse_growth(json::parse(R"({"kind":"linear","slope":"1/2"})"))(4) == R("2"));
  const auto list = parse_growth_list("linear:1/100,sqrt_floor,log2_floor");
  REQUIRE(list.size() == 3);
  CHECK(list[1].name() == "sqrt_floor");
  CHECK_ERROR_KIND(parse_growth_list("cubic"), ErrorKind::parse);
}
