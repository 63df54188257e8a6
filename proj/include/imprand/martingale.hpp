#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "imprand/common.hpp"
#include "imprand/forecast.hpp"
#include "imprand/process.hpp"

namespace imprand {

/// ΔF(s): the gamble x -> F(sx) - F(s).
Gamble process_difference(const RealProcess& process, SituationView s);

/// Capital trajectory [M(ω_{1:0}), ..., M(ω_{1:n})].
std::vector<Rational> evaluate_capital(const Strategy& strategy, const PathPrefix& prefix);

/// A situation whose increment gamble is not offered by the forecast there.
struct Violation {
  Situation situation;
  Rational upper_expectation;
};

struct SupermartingaleReport {
  bool holds = true;
  std::size_t depth = 0;
  /// Ordered by situation length, then lexicographically.
  std::vector<Violation> violations;
};

/// Checks the supermartingale condition at every situation with |s| < depth.
/// Exhaustive over 2^depth situations; depth beyond limits.exhaustive_depth
/// is a resource error.
SupermartingaleReport is_supermartingale(const Strategy& strategy, const ForecastSystem& forecast,
                                         std::size_t depth, const Limits& limits = {},
                                         std::size_t max_violations = std::numeric_limits<std::size_t>::max());

/// Test process equal to 1 up to level N and T/K beyond. Multiplicative input
/// stays multiplicative. Requires K >= 1.
Strategy rescale_test_process(const Strategy& strategy, std::size_t n, const Rational& k);

/// Materializes S^r_F on levels 0..horizon-1 as a temporal mask.
Selection selection_from_process(const Process& process, const Rational& r, std::size_t horizon,
                                 const Limits& limits = {});

}  // namespace imprand
