#include "helpers.hpp"
#include "imprand/global.hpp"

using namespace imprand;

namespace {
const IntervalForecast kQuarter{R("1/4"), R("3/4")};

DepthGamble table(std::size_t depth, std::initializer_list<std::pair<const std::string, Rational>> entries) {
  return DepthGamble::from_table(depth, std::map<std::string, Rational>(entries));
}
}  // namespace

TEST_CASE("depth gambles and events") {
  const DepthGamble f = table(2, {{"00", R("0")}, {"01", R("1")}, {"10", R("2")}, {"11", R("3")}});
  CHECK(f.payoff()[2] == R("2"));
  CHECK(f.at("11") == R("3"));
  CHECK(f.min() == R("0"));
  CHECK(f.max() == R("3"));
  CHECK(f.dominated_by(f + R("1")));
  CHECK_ERROR_KIND(table(2, {{"00", R("0")}}), ErrorKind::domain);
  CHECK_ERROR_KIND(table(1, {{"0", R("0")}, {"11", R("1")}}), ErrorKind::domain);
  CHECK_ERROR_KIND(f + DepthGamble::constant(1, R("1")), ErrorKind::domain);

  const ClopenEvent a(2, {"01", "11"});
  CHECK(a.complement().members() == std::set<std::string>{"00", "10"});
  CHECK(a.indicator().at("01") == R("1"));
  CHECK(a.indicator().at("10") == R("0"));
  CHECK_ERROR_KIND(ClopenEvent(2, {"1"}), ErrorKind::domain);
}

TEST_CASE("global expectations by backward recursion") {
  const Forecast quarter = make_stationary(kQuarter);
  CHECK(global_upper_expectation(*quarter, DepthGamble::constant(3, R("5/7"))) == R("5/7"));
  CHECK(global_lower_expectation(*quarter, DepthGamble::constant(3, R("5/7"))) == R("5/7"));
  const ClopenEvent first_one(1, {"1"});
  CHECK(global_upper_expectation(*quarter, first_one.indicator()) == R("3/4"));
  CHECK(global_lower_expectation(*quarter, first_one.indicator()) == R("1/4"));
  const ClopenEvent both_one(2, {"11"});
  CHECK(upper_probability(*quarter, both_one) == R("9/16"));
  CHECK(lower_probability(*quarter, both_one) == R("1/16"));
  // First outcome is 1 expressed at depth 2.
  CHECK(upper_probability(*quarter, ClopenEvent(2, {"10", "11"})) == R("3/4"));
}

TEST_CASE("probabilities of trivial and complementary events") {
  const Forecast quarter = make_stationary(kQuarter);
  CHECK(upper_probability(*quarter, ClopenEvent(2, {"00", "01", "10", "11"})) == R("1"));
  CHECK(lower_probability(*quarter, ClopenEvent(2, {"00", "01", "10", "11"})) == R("1"));
  CHECK(upper_probability(*quarter, ClopenEvent(2, {})) == R("0"));
  const ClopenEvent a(3, {"001", "010", "111"});
  CHECK(upper_probability(*quarter, a.complement()) + lower_probability(*quarter, a) == R("1"));
}

TEST_CASE("enumeration oracle agrees with the recursion") {
  const Forecast quarter = make_stationary(kQuarter);
  const ClopenEvent equal(2, {"00", "11"});
  const Rational rec = upper_probability(*quarter, equal);
  CHECK(upper_expectation_enum_oracle(*quarter, equal.indicator()) == rec);
  // V(0) = V(1) = 3/4, so the root value is 3/4 whatever the first forecast.
  CHECK(rec == R("3/4"));

  const Forecast precise = make_stationary(IntervalForecast(R("1/3")));
  const DepthGamble f = table(2, {{"00", R("1")}, {"01", R("-2")}, {"10", R("0")}, {"11", R("5")}});
  const Rational path_sum = R("4/9") * R("1") + R("2/9") * R("-2") + R("2/9") * R("0") + R("1/9") * R("5");
  CHECK(upper_expectation_enum_oracle(*precise, f) == path_sum);
  CHECK(global_upper_expectation(*precise, f) == path_sum);

  const Forecast witness = make_witness(R("1/5"), R("2/3"), Situation("101"));
  const DepthGamble g = table(1, {{"0", R("3")}, {"1", R("-1")}});
  CHECK(upper_expectation_enum_oracle(*witness, g) == global_upper_expectation(*witness, g));
  CHECK_ERROR_KIND(upper_expectation_enum_oracle(*quarter, DepthGamble::constant(5, R("0"))), ErrorKind::resource);
}

TEST_CASE("global depth cap") {
  Limits l;
  l.global_depth = 3;
  const Forecast quarter = make_stationary(kQuarter);
  CHECK_ERROR_KIND(global_upper_expectation(*quarter, DepthGamble::constant(4, R("0")), l), ErrorKind::resource);
  CHECK_ERROR_KIND(global_upper_expectation(*make_witness(R("0"), R("1"), Situation("1")),
                                            DepthGamble::constant(2, R("0"))),
                   ErrorKind::depth);
}
