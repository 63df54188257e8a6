#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "imprand/coherence.hpp"

using namespace imprand;

TEST_CASE("a hand-made case passes every property") {
  CoherenceCase c;
  c.interval = IntervalForecast(R("1/4"), R("3/4"));
  c.f = {R("-3/4"), R("1/4")};
  c.g = {R("2"), R("-1/3")};
  c.h = {R("0"), R("5")};
  c.lambda = R("3/2");
  c.mu = R("-7");
  CHECK_FALSE(check_coherence_case(c));
  CHECK(check_coherence_case(c, true));
}

TEST_CASE("seeded suite") {
  const CoherenceReport ok = run_coherence_suite(500, 11);
  CHECK(ok.passed());
  CHECK(ok.trials == 500);
  CHECK(ok.checks > 0);
  const auto j = ok.to_json();
  CHECK(j.at("passed") == true);
  CHECK(j.at("seed") == 11);

  const CoherenceReport broken = run_coherence_suite(500, 11, true);
  REQUIRE_FALSE(broken.passed());
  CHECK_FALSE(broken.failure->property.empty());
  CHECK(check_coherence_case(broken.failure->counterexample, true) == broken.failure->property);
  CHECK(broken.to_json().contains("counterexample"));
  CHECK_ERROR_KIND(run_coherence_suite(0, 1), ErrorKind::domain);
}
