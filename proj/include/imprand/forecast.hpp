#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "imprand/local.hpp"
#include "imprand/situation.hpp"

namespace imprand {

/// A map from situations to interval forecasts. Implementations are
/// immutable and safe to share across threads.
class ForecastSystem {
 public:
  virtual ~ForecastSystem() = default;

  /// Forecast for the next outcome after s. Throws depth error when s lies
  /// beyond levels().
  virtual IntervalForecast at(SituationView s) const = 0;

  /// Depends on s only through |s|.
  virtual bool temporal() const { return false; }
  /// Same forecast in every situation.
  virtual bool stationary() const { return false; }
  /// Number of evaluable levels (|s| < levels); nullopt when unbounded.
  virtual std::optional<std::size_t> levels() const { return std::nullopt; }

  virtual nlohmann::json to_json() const = 0;
};

using Forecast = std::shared_ptr<const ForecastSystem>;

Forecast make_stationary(const IntervalForecast& interval);
/// [p,p] when |s| is odd, [q,q] when |s| is even.
Forecast make_alternating(const Rational& p, const Rational& q);
/// Temporal precise system reading p for a 0 and q for a 1 of the driving
/// path at position |s|+1. Requires p < q.
Forecast make_witness(const Rational& p, const Rational& q, PathPrefix witness, std::string source_file = {});
/// Probability 1 on the path's actual next outcome.
Forecast make_perfect(PathPrefix path, std::string source_file = {});
/// Level-indexed table: levels[n] is the forecast at every situation of length n.
Forecast make_temporal_table(std::vector<IntervalForecast> levels);
/// Situation-keyed table; keys must have length <= depth. Unlisted
/// situations within depth get the vacuous forecast [0,1].
Forecast make_explicit_forecast(std::map<std::string, IntervalForecast> table, std::size_t depth);

IntervalForecast eval_forecast(const ForecastSystem& forecast, SituationView s);

/// True iff inner(s) ⊆ outer(s) for every |s| <= depth. Enumerates all
/// situations unless both systems are temporal; enumeration past
/// limit_depth is a resource error.
bool contains(const ForecastSystem& inner, const ForecastSystem& outer, std::size_t depth,
              std::size_t limit_depth = 16);

}  // namespace imprand
