#include "helpers.hpp"
#include "imprand/generate.hpp"

using namespace imprand;

TEST_CASE("canonical paths") {
  CHECK(canonical_path(CanonicalPath::alternating, 4).bits() == "0101");
  CHECK(canonical_path(CanonicalPath::all_zero, 3).bits() == "000");
  CHECK(canonical_path(CanonicalPath::all_one, 0).bits().empty());
  CHECK(canonical_path_from_string("all_one") == CanonicalPath::all_one);
  CHECK_ERROR_KIND(canonical_path_from_string("random"), ErrorKind::parse);
}

TEST_CASE("sampler primitives") {
  SeededSampler a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  SeededSampler s(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(s.below(7) < 7);
    const long v = s.between(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
    CHECK(s.bernoulli(R("1")));
    CHECK_FALSE(s.bernoulli(R("0")));
  }
  CHECK_ERROR_KIND(s.below(0), ErrorKind::domain);
  // The reference engine's 10000th output is fixed by the C++ standard.
  std::mt19937_64 reference;
  reference.discard(9999);
  CHECK(reference() == 9981545732273789042ULL);
}

TEST_CASE("sampling precise systems") {
  CHECK(sample_path(*make_stationary(IntervalForecast(R("1"))), 50, 3).bits() == std::string(50, '1'));
  const Situation omega("0110100110010110");
  CHECK(sample_path(*make_perfect(omega), omega.length(), 99) == omega);
  const PathPrefix witness_path = sample_path(*make_witness(R("0"), R("1"), Situation("1101")), 4, 5);
  CHECK(witness_path.bits() == "1101");

  const PathPrefix coin = sample_path(*make_stationary(IntervalForecast(R("1/2"))), 10000, 2024);
  std::size_t ones = 0;
  for (char c : coin.bits()) ones += c == '1';
  CHECK(ones >= 4700);
  CHECK(ones <= 5300);
  CHECK(sample_path(*make_stationary(IntervalForecast(R("1/2"))), 10000, 2024) == coin);
  CHECK_FALSE(sample_path(*make_stationary(IntervalForecast(R("1/2"))), 10000, 2025) == coin);
}

TEST_CASE("imprecise systems cannot be sampled") {
  CHECK_ERROR_KIND(sample_path(*make_stationary(IntervalForecast(R("1/4"), R("3/4"))), 5, 1), ErrorKind::semantics);
  CHECK_ERROR_KIND(sample_path(*make_perfect(Situation("01")), 3, 1), ErrorKind::depth);
}
