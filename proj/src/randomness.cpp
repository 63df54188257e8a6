#include "imprand/randomness.hpp"

#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace imprand {

// ------------------------------------------------------------ growth functions

GrowthFunction GrowthFunction::linear(Rational slope) {
  if (slope.sign() <= 0) fail(ErrorKind::domain, "linear growth needs a positive slope");
  GrowthFunction g(Kind::linear);
  g.slope_ = std::move(slope);
  return g;
}

GrowthFunction GrowthFunction::log2_floor() { return GrowthFunction(Kind::log2_floor); }
GrowthFunction GrowthFunction::sqrt_floor() { return GrowthFunction(Kind::sqrt_floor); }

GrowthFunction GrowthFunction::table(std::vector<Rational> values) {
  if (values.size() < 2) fail(ErrorKind::domain, "growth table needs at least two values");
  if (values.front().sign() < 0) fail(ErrorKind::domain, "growth table values must be non-negative");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1]) fail(ErrorKind::domain, "growth table must be non-decreasing");
  if (values.back() == values[values.size() - 2])
    fail(ErrorKind::domain, "growth table must end with a positive increment to be unbounded");
  GrowthFunction g(Kind::table);
  g.values_ = std::move(values);
  return g;
}

Rational GrowthFunction::operator()(std::size_t n) const {
  switch (kind_) {
    case Kind::linear:
      return slope_ * Rational(static_cast<long>(n));
    case Kind::log2_floor: {
      if (n == 0) return Rational(0);
      long k = 0;
      while ((n >> 1) > 0) { n >>= 1; ++k; }
      return Rational(k);
    }
    case Kind::sqrt_floor: {
      mpz_class root;
      mpz_sqrt(root.get_mpz_t(), mpz_class(static_cast<unsigned long>(n)).get_mpz_t());
      return Rational(root.get_si());
    }
    case Kind::table: {
      if (n < values_.size()) return values_[n];
      const Rational step = values_.back() - values_[values_.size() - 2];
      return values_.back() + step * Rational(static_cast<long>(n - values_.size() + 1));
    }
  }
  return Rational(0);
}

std::string GrowthFunction::name() const {
  switch (kind_) {
    case Kind::linear: return "linear:" + slope_.str();
    case Kind::log2_floor: return "log2_floor";
    case Kind::sqrt_floor: return "sqrt_floor";
    case Kind::table: return "table";
  }
  return "";
}

nlohmann::json GrowthFunction::to_json() const {
  switch (kind_) {
    case Kind::linear: return {{"kind", "linear"}, {"slope", slope_.str()}};
    case Kind::log2_floor: return {{"kind", "log2_floor"}};
    case Kind::sqrt_floor: return {{"kind", "sqrt_floor"}};
    case Kind::table: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& v : values_) arr.push_back(v.str());
      return {{"kind", "table"}, {"values", arr}};
    }
  }
  return {};
}

std::vector<GrowthFunction> default_growth_functions() {
  return {GrowthFunction::linear(Rational(1, 100)), GrowthFunction::sqrt_floor(), GrowthFunction::log2_floor()};
}

// ------------------------------------------------------------------ battery

namespace {

long double log2_of(const mpz_class& z) {
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(static_cast<long double>(mantissa)) + static_cast<long double>(exp);
}

long double log2_of(const Rational& r) { return log2_of(r.numerator()) - log2_of(r.denominator()); }

constexpr long double kLogEps = 1e-15L;   // relative error of one log2 evaluation
constexpr long double kSumEps = 1e-18L;   // relative rounding of one long double add

/// Product of multiplier values kept as exponents over the distinct factors
/// seen so far, with a running log2 for cheap ordering. Comparisons whose
/// log2 gap is within the accumulated error bound fall back to exact
/// rational arithmetic, so every answer is exact.
class FactoredCapital {
 public:
  struct Factors {
    std::map<Rational, std::size_t> ids;
    std::vector<Rational> values;
    std::vector<long double> logs;
    long double max_log = 0;
  };

  explicit FactoredCapital(Factors& factors) : factors_(&factors) {}

  void multiply(const Rational& f) {
    ++steps_;
    if (zero_) return;
    if (f.is_zero()) {
      zero_ = true;
      return;
    }
    if (f == Rational(1)) return;
    auto [it, inserted] = factors_->ids.try_emplace(f, factors_->values.size());
    if (inserted) {
      factors_->values.push_back(f);
      factors_->logs.push_back(log2_of(f));
      factors_->max_log = std::max(factors_->max_log, std::fabs(factors_->logs.back()));
    }
    if (exponents_.size() <= it->second) exponents_.resize(it->second + 1, 0);
    ++exponents_[it->second];
    log2_ += factors_->logs[it->second];
  }

  bool zero() const { return zero_; }

  Rational value() const {
    if (zero_) return Rational(0);
    mpz_class num(1), den(1), tmp;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
      if (exponents_[i] == 0) continue;
      const Rational& f = factors_->values[i];
      mpz_pow_ui(tmp.get_mpz_t(), f.raw().get_num_mpz_t(), exponents_[i]);
      num *= tmp;
      mpz_pow_ui(tmp.get_mpz_t(), f.raw().get_den_mpz_t(), exponents_[i]);
      den *= tmp;
    }
    return Rational(mpq_class(num, den));
  }

  /// Sign of (this - other).
  int compare(const FactoredCapital& other) const {
    if (zero_ || other.zero_) return (zero_ ? 0 : 1) - (other.zero_ ? 0 : 1);
    if (same_exponents(other)) return 0;
    const long double gap = log2_ - other.log2_;
    if (std::fabs(gap) > error_bound() + other.error_bound()) return gap > 0 ? 1 : -1;
    const auto c = value() <=> other.value();
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }

  /// Sign of (this - threshold).
  int compare(const Rational& threshold) const {
    if (threshold.sign() <= 0 || zero_) {
      const auto c = (zero_ ? Rational(0) : Rational(1)) <=> (threshold.sign() <= 0 ? threshold : Rational(1));
      if (threshold.sign() <= 0 && !zero_) return 1;
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    const long double target = log2_of(threshold);
    const long double gap = log2_ - target;
    if (std::fabs(gap) > error_bound() + kLogEps * (1 + std::fabs(target))) return gap > 0 ? 1 : -1;
    const auto c = value() <=> threshold;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }

 private:
  bool same_exponents(const FactoredCapital& other) const {
    const std::size_t n = std::max(exponents_.size(), other.exponents_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = i < exponents_.size() ? exponents_[i] : 0;
      const auto b = i < other.exponents_.size() ? other.exponents_[i] : 0;
      if (a != b) return false;
    }
    return true;
  }

  long double error_bound() const {
    const long double k = static_cast<long double>(steps_);
    return 1e-9L + k * (kLogEps * factors_->max_log + 4 * kSumEps * (std::fabs(log2_) + factors_->max_log + 1));
  }

  Factors* factors_;
  bool zero_ = false;
  std::vector<unsigned long> exponents_;
  long double log2_ = 0;
  std::size_t steps_ = 0;
};

void reject(StrategyOutcome& out, std::string why, std::optional<Violation> violation = std::nullopt) {
  out.accepted = false;
  out.rejection = std::move(why);
  out.violation = std::move(violation);
  out.max_capital = Rational(0);
  out.final_capital = Rational(0);
}

std::string violation_text(const Violation& v) {
  return "supermartingale condition fails at situation '" + v.situation.bits() + "' (upper expectation " +
         v.upper_expectation.str() + ")";
}

StrategyOutcome run_one(const PathPrefix& prefix, const ForecastSystem& forecast, const Strategy& strategy,
                        const std::vector<GrowthFunction>& growth, const Limits& limits) {
  StrategyOutcome out;
  out.exceedances.assign(growth.size(), std::nullopt);
  if (strategy.initial() != Rational(1)) {
    reject(out, "initial capital " + strategy.initial().str() + " is not 1");
    return out;
  }

  const std::size_t n = prefix.length();
  const bool proven = strategy.uniform() && forecast.stationary();
  std::size_t checked_depth = 0;
  if (proven) {
    const SituationView root;
    Rational upper = upper_expectation(forecast.at(root), strategy.increment(root, Rational(1)));
    if (upper.sign() > 0) {
      Violation v{Situation(), std::move(upper)};
      reject(out, violation_text(v), v);
      return out;
    }
    out.verification = "all situations (situation-independent strategy and forecast)";
  } else {
    checked_depth = std::min(n, limits.exhaustive_depth);
    auto report = is_supermartingale(strategy, forecast, checked_depth, limits, 1);
    if (!report.holds) {
      reject(out, violation_text(report.violations.front()), report.violations.front());
      return out;
    }
    out.verification = "exhaustive to depth " + std::to_string(checked_depth) +
                       (checked_depth < n ? ", visited situations to depth " + std::to_string(n) : "");
  }

  std::vector<Rational> thresholds(growth.size());
  auto note_exceedances = [&](std::size_t step, auto&& at_least) {
    for (std::size_t g = 0; g < growth.size(); ++g) {
      if (out.exceedances[g]) continue;
      const Rational tau = growth[g](step);
      if (tau > Rational(1) && at_least(tau)) out.exceedances[g] = step;
    }
  };

  if (strategy.is_multiplicative()) {
    FactoredCapital::Factors factors;
    FactoredCapital capital(factors);
    FactoredCapital best = capital;
    std::size_t best_step = 0;
    note_exceedances(0, [&](const Rational& tau) { return capital.compare(tau) >= 0; });
    for (std::size_t k = 0; k < n; ++k) {
      const SituationView s = prefix.prefix(k);
      const Gamble d = strategy.multiplier()->at(s);
      if (d.at0.sign() < 0 || d.at1.sign() < 0) fail(ErrorKind::domain, "multiplier value is negative");
      if (!proven && k >= checked_depth && !capital.zero()) {
        const Rational upper = upper_expectation(eval_forecast(forecast, s), d);
        if (upper > Rational(1)) {
          Violation v{Situation(std::string(s.bits())), capital.value() * (upper - Rational(1))};
          reject(out, violation_text(v), v);
          return out;
        }
      }
      capital.multiply(d(prefix.at(k)));
      if (capital.compare(best) > 0) {
        best = capital;
        best_step = k + 1;
      }
      note_exceedances(k + 1, [&](const Rational& tau) { return capital.compare(tau) >= 0; });
    }
    out.max_capital = best.value();
    out.argmax_step = best_step;
    out.final_capital = capital.value();
    return out;
  }

  Rational capital = strategy.initial();
  out.max_capital = capital;
  note_exceedances(0, [&](const Rational& tau) { return capital >= tau; });
  for (std::size_t k = 0; k < n; ++k) {
    const SituationView s = prefix.prefix(k);
    const Gamble delta = strategy.increment(s, capital);
    if (!proven && k >= checked_depth) {
      Rational upper = upper_expectation(eval_forecast(forecast, s), delta);
      if (upper.sign() > 0) {
        Violation v{Situation(std::string(s.bits())), std::move(upper)};
        reject(out, violation_text(v), v);
        return out;
      }
    }
    capital += delta(prefix.at(k));
    if (capital.sign() < 0) {
      reject(out, "capital becomes negative at step " + std::to_string(k + 1));
      return out;
    }
    if (capital > out.max_capital) {
      out.max_capital = capital;
      out.argmax_step = k + 1;
    }
    note_exceedances(k + 1, [&](const Rational& tau) { return capital >= tau; });
  }
  out.final_capital = capital;
  return out;
}

}  // namespace

std::vector<StrategyOutcome> run_battery(const PathPrefix& prefix, const ForecastSystem& forecast,
                                         const std::vector<Strategy>& strategies,
                                         const std::vector<GrowthFunction>& growth, const Limits& limits) {
  std::vector<StrategyOutcome> out;
  out.reserve(strategies.size());
  for (const auto& strategy : strategies) out.push_back(run_one(prefix, forecast, strategy, growth, limits));
  return out;
}

// -------------------------------------------------------- frequency statistics

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail_low: return "fail_low";
    case Verdict::fail_high: return "fail_high";
    case Verdict::insufficient_data: return "insufficient_data";
  }
  return "";
}

FreqReport church_statistic(const PathPrefix& prefix, const SelectionProcess& selection,
                            const ForecastSystem& forecast, const FrequencyOptions& options) {
  FreqReport report;
  Rational lower_sum(0), upper_sum(0);
  const bool stationary = forecast.stationary();
  for (std::size_t k = 0; k < prefix.length(); ++k) {
    const SituationView s = prefix.prefix(k);
    if (!selection.at(s)) continue;
    ++report.selected;
    report.ones += static_cast<std::size_t>(prefix.at(k));
    if (!stationary) {
      const IntervalForecast i = eval_forecast(forecast, s);
      lower_sum += i.lower();
      upper_sum += i.upper();
    }
  }
  if (report.selected == 0) return report;

  const Rational count(static_cast<long>(report.selected));
  if (stationary) {
    const IntervalForecast i = forecast.at(SituationView());
    lower_sum = count * i.lower();
    upper_sum = count * i.upper();
  }
  const Rational ones(static_cast<long>(report.ones));
  report.frequency = ones / count;
  report.lower_statistic = (ones - lower_sum) / count;
  report.upper_statistic = (ones - upper_sum) / count;
  if (report.selected < options.min_count) report.verdict = Verdict::insufficient_data;
  else if (report.lower_statistic < -options.tolerance) report.verdict = Verdict::fail_low;
  else if (report.upper_statistic > options.tolerance) report.verdict = Verdict::fail_high;
  else report.verdict = Verdict::pass;
  return report;
}

std::vector<Selection> build_selection_battery(const Rational& p, const Rational& q,
                                               const std::vector<Process>& processes, std::size_t horizon,
                                               const Limits& limits) {
  std::vector<Selection> out;
  std::set<std::string> seen;
  for (const auto& process : processes) {
    for (const Rational* r : {&p, &q}) {
      Selection s = selection_from_process(process, *r, horizon, limits);
      if (seen.insert(s->to_json().at("bits").get<std::string>()).second) out.push_back(std::move(s));
    }
  }
  return out;
}

SelectionFrequency selected_frequency(const PathPrefix& prefix, const SelectionProcess& selection) {
  SelectionFrequency f;
  for (std::size_t k = 0; k < prefix.length(); ++k) {
    if (!selection.at(prefix.prefix(k))) continue;
    ++f.selected;
    f.ones += static_cast<std::size_t>(prefix.at(k));
  }
  if (f.selected > 0)
    f.frequency = Rational(static_cast<long>(f.ones)) / Rational(static_cast<long>(f.selected));
  return f;
}

IntervalForecast estimate_interval(const PathPrefix& prefix, const std::vector<Selection>& battery,
                                   std::size_t min_count) {
  std::optional<Rational> lo, hi;
  for (const auto& selection : battery) {
    const SelectionFrequency f = selected_frequency(prefix, *selection);
    if (f.selected < min_count || !f.frequency) continue;
    if (!lo || *f.frequency < *lo) lo = f.frequency;
    if (!hi || *f.frequency > *hi) hi = f.frequency;
  }
  if (!lo) return IntervalForecast::vacuous();
  return IntervalForecast(max(*lo, Rational(0)), min(*hi, Rational(1)));
}

std::vector<Selection> default_selection_battery() {
  return {make_always(), make_follow_symbol(0), make_follow_symbol(1)};
}

}  // namespace imprand
