#include "imprand/coherence.hpp"

#include <functional>
#include <vector>

#include <nlohmann/json.hpp>

#include "imprand/generate.hpp"
#include "imprand/serialize.hpp"

namespace imprand {

namespace {

Rational random_rational(SeededSampler& rng, long lo, long hi) {
  return Rational(rng.between(lo, hi), rng.between(1, 12));
}

IntervalForecast random_interval(SeededSampler& rng) {
  const long den = rng.between(1, 12);
  long a = rng.between(0, den);
  long b = rng.between(0, den);
  if (rng.below(5) == 0) b = a;
  if (a > b) std::swap(a, b);
  return {Rational(a, den), Rational(b, den)};
}

Gamble random_gamble(SeededSampler& rng, long lo, long hi) {
  return {random_rational(rng, lo, hi), random_rational(rng, lo, hi)};
}

CoherenceCase random_case(SeededSampler& rng) {
  CoherenceCase c;
  c.interval = random_interval(rng);
  c.f = random_gamble(rng, -20, 20);
  c.g = random_gamble(rng, -20, 20);
  c.h = random_gamble(rng, 0, 20);
  c.lambda = random_rational(rng, 0, 20);
  c.mu = random_rational(rng, -20, 20);
  return c;
}

using Expectation = Rational (*)(const IntervalForecast&, const Gamble&);

std::vector<CoherenceCase> shrink_candidates(const CoherenceCase& c) {
  std::vector<CoherenceCase> out;
  auto simpler = [](const Rational& r) {
    std::vector<Rational> v{Rational(0), Rational(1), Rational(-1)};
    const Rational t(mpq_class(mpz_class(r.numerator() / r.denominator())));
    v.push_back(t);
    return v;
  };
  auto try_rational = [&](Rational CoherenceCase::*field, bool non_negative) {
    for (const auto& r : simpler(c.*field)) {
      if (r == c.*field || (non_negative && r.sign() < 0)) continue;
      CoherenceCase d = c;
      d.*field = r;
      out.push_back(std::move(d));
    }
  };
  auto try_gamble = [&](Gamble CoherenceCase::*field, bool non_negative) {
    for (Rational Gamble::*side : {&Gamble::at0, &Gamble::at1}) {
      for (const auto& r : simpler((c.*field).*side)) {
        if (r == (c.*field).*side || (non_negative && r.sign() < 0)) continue;
        CoherenceCase d = c;
        (d.*field).*side = r;
        out.push_back(std::move(d));
      }
    }
  };
  for (const auto& [lo, hi] : std::vector<std::pair<Rational, Rational>>{
           {Rational(0), Rational(1)}, {Rational(0), Rational(0)}, {Rational(1), Rational(1)},
           {Rational(0), c.interval.upper()}, {c.interval.lower(), Rational(1)}}) {
    if (IntervalForecast(lo, hi) == c.interval) continue;
    CoherenceCase d = c;
    d.interval = IntervalForecast(lo, hi);
    out.push_back(std::move(d));
  }
  try_gamble(&CoherenceCase::f, false);
  try_gamble(&CoherenceCase::g, false);
  try_gamble(&CoherenceCase::h, true);
  try_rational(&CoherenceCase::lambda, true);
  try_rational(&CoherenceCase::mu, false);
  return out;
}

mpz_class size(const Rational& r) { return abs(r).numerator() + r.denominator(); }

/// Total of |num| + den over every rational in the case; shrinking only
/// accepts strict decreases, so it terminates.
mpz_class size(const CoherenceCase& c) {
  mpz_class total = size(c.interval.lower()) + size(c.interval.upper()) + size(c.lambda) + size(c.mu);
  for (const Gamble* g : {&c.f, &c.g, &c.h}) total += size(g->at0) + size(g->at1);
  return total;
}

CoherenceCase shrink(CoherenceCase c, const std::string& property, bool inject_fault) {
  bool progress = true;
  while (progress) {
    progress = false;
    const mpz_class current = size(c);
    for (auto& candidate : shrink_candidates(c)) {
      if (size(candidate) < current && check_coherence_case(candidate, inject_fault) == property) {
        c = std::move(candidate);
        progress = true;
        break;
      }
    }
  }
  return c;
}

}  // namespace

nlohmann::json CoherenceCase::to_json() const {
  return {{"interval", imprand::to_json(interval)}, {"f", imprand::to_json(f)},   {"g", imprand::to_json(g)},
          {"h", imprand::to_json(h)},               {"lambda", lambda.str()},     {"mu", mu.str()}};
}

nlohmann::json CoherenceReport::to_json() const {
  nlohmann::json j{{"trials", trials}, {"seed", seed}, {"checks", checks}, {"passed", passed()}};
  if (failure) j["counterexample"] = {{"property", failure->property}, {"case", failure->counterexample.to_json()}};
  return j;
}

std::optional<std::string> check_coherence_case(const CoherenceCase& c, bool inject_fault) {
  const Expectation upper = inject_fault ? &lower_expectation : &upper_expectation;
  const IntervalForecast& i = c.interval;
  const Rational uf = upper(i, c.f);

  if (!(c.f.min() <= uf && uf <= c.f.max())) return "C1 bounds";
  if (upper(i, c.lambda * c.f) != c.lambda * uf) return "C2 homogeneity";
  if (upper(i, c.f + c.g) > uf + upper(i, c.g)) return "C3 subadditivity";
  if (upper(i, c.f + c.mu) != uf + c.mu) return "C4 constant additivity";
  if (upper(i, c.f + c.h) < uf) return "C5 monotonicity";
  if (c.f.dominated_by(c.g) && uf > upper(i, c.g)) return "C5 monotonicity";
  if (lower_expectation(i, c.f) != -upper(i, -c.f)) return "conjugacy";

  const auto cone = cone_decompose(i, c.f);
  if (cone.has_value() != (uf.sign() <= 0)) return "cone equivalence";
  if (cone && (cone->reconstruct() != c.f || !cone->admissible_for(i))) return "cone reconstruction";
  return std::nullopt;
}

CoherenceReport run_coherence_suite(std::size_t trials, std::uint64_t seed, bool inject_fault) {
  if (trials == 0) fail(ErrorKind::domain, "coherence suite needs at least one trial");
  SeededSampler rng(seed);
  CoherenceReport report;
  report.trials = trials;
  report.seed = seed;
  for (std::size_t t = 0; t < trials; ++t) {
    const CoherenceCase c = random_case(rng);
    ++report.checks;
    if (auto property = check_coherence_case(c, inject_fault)) {
      report.failure = CoherenceFailure{*property, shrink(c, *property, inject_fault)};
      return report;
    }
  }
  return report;
}

}  // namespace imprand
