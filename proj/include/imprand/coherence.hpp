#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "imprand/local.hpp"

namespace imprand {

/// One random tuple for the coherence checks. h is a non-negative gamble;
/// the monotonicity check compares f with f + h.
struct CoherenceCase {
  IntervalForecast interval = IntervalForecast::vacuous();
  Gamble f;
  Gamble g;
  Gamble h;
  Rational lambda;
  Rational mu;

  nlohmann::json to_json() const;
};

struct CoherenceFailure {
  std::string property;
  CoherenceCase counterexample;
};

struct CoherenceReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t checks = 0;
  std::optional<CoherenceFailure> failure;

  bool passed() const { return !failure; }
  nlohmann::json to_json() const;
};

/// Name of the first property the case violates, if any. With inject_fault
/// the lower expectation stands in for the upper one, which must be caught.
std::optional<std::string> check_coherence_case(const CoherenceCase& c, bool inject_fault = false);

/// Runs `trials` seeded cases and stops at the first failure, which is
/// shrunk greedily towards small values before being reported.
CoherenceReport run_coherence_suite(std::size_t trials, std::uint64_t seed, bool inject_fault = false);

}  // namespace imprand
