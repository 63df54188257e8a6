#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "imprand/common.hpp"
#include "imprand/forecast.hpp"
#include "imprand/martingale.hpp"
#include "imprand/process.hpp"

namespace imprand {

/// Non-decreasing, unbounded, non-negative threshold sequence τ(n).
class GrowthFunction {
 public:
  enum class Kind { linear, log2_floor, sqrt_floor, table };

  static GrowthFunction linear(Rational slope);
  static GrowthFunction log2_floor();
  static GrowthFunction sqrt_floor();
  /// Beyond the table the last increment repeats, so the last two values
  /// must differ for the sequence to be unbounded.
  static GrowthFunction table(std::vector<Rational> values);

  Kind kind() const { return kind_; }
  Rational operator()(std::size_t n) const;
  std::string name() const;
  nlohmann::json to_json() const;

 private:
  GrowthFunction(Kind kind) : kind_(kind) {}  // NOLINT(google-explicit-constructor)
  Kind kind_;
  Rational slope_;
  std::vector<Rational> values_;
};

/// linear(1/100), sqrt_floor, log2_floor.
std::vector<GrowthFunction> default_growth_functions();

struct StrategyOutcome {
  bool accepted = true;
  /// Why the strategy was refused as a bet; empty when accepted.
  std::string rejection;
  std::optional<Violation> violation;
  /// How the supermartingale condition was established.
  std::string verification;

  Rational max_capital;
  std::size_t argmax_step = 0;
  Rational final_capital;
  /// Per growth function: least n with τ(n) > 1 and T(ω_{1:n}) >= τ(n).
  std::vector<std::optional<std::size_t>> exceedances;
};

/// Runs every strategy along the prefix. A strategy counts only if it is a
/// test supermartingale for the forecast: initial capital 1, no negative
/// capital along the prefix, and the supermartingale condition holding
/// (globally when both strategy and forecast are situation-independent,
/// otherwise exhaustively up to min(|prefix|, limits.exhaustive_depth) and at
/// every visited situation beyond).
std::vector<StrategyOutcome> run_battery(const PathPrefix& prefix, const ForecastSystem& forecast,
                                         const std::vector<Strategy>& strategies,
                                         const std::vector<GrowthFunction>& growth, const Limits& limits = {});

enum class Verdict { pass, fail_low, fail_high, insufficient_data };
std::string to_string(Verdict v);

struct FrequencyOptions {
  Rational tolerance{0};
  std::size_t min_count = 30;
};

struct FreqReport {
  std::size_t selected = 0;
  std::size_t ones = 0;
  /// Empty when nothing was selected.
  std::optional<Rational> frequency;
  /// Σ S [ω_{k+1} - lower φ] / Σ S at n = |prefix|; zero when nothing was selected.
  Rational lower_statistic;
  /// Σ S [ω_{k+1} - upper φ] / Σ S.
  Rational upper_statistic;
  Verdict verdict = Verdict::insufficient_data;
};

FreqReport church_statistic(const PathPrefix& prefix, const SelectionProcess& selection,
                            const ForecastSystem& forecast, const FrequencyOptions& options = {});

/// {S^r_F : F in processes, r in {p, q}} materialized to the horizon,
/// deduplicated by mask, in input order.
std::vector<Selection> build_selection_battery(const Rational& p, const Rational& q,
                                               const std::vector<Process>& processes, std::size_t horizon,
                                               const Limits& limits = {});

struct SelectionFrequency {
  std::size_t selected = 0;
  std::size_t ones = 0;
  std::optional<Rational> frequency;
};

SelectionFrequency selected_frequency(const PathPrefix& prefix, const SelectionProcess& selection);

/// Hull of the selected frequencies of every selection with at least
/// min_count selections; vacuous [0,1] when none qualifies.
IntervalForecast estimate_interval(const PathPrefix& prefix, const std::vector<Selection>& battery,
                                   std::size_t min_count);

/// always, follow_symbol(0), follow_symbol(1).
std::vector<Selection> default_selection_battery();

}  // namespace imprand
