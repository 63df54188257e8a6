#include "imprand/martingale.hpp"

#include <string>

namespace imprand {

Gamble process_difference(const RealProcess& process, SituationView s) {
  std::string buf(s.bits());
  const Rational here = process.at(s);
  buf.push_back('0');
  Rational d0 = process.at(SituationView(buf)) - here;
  buf.back() = '1';
  Rational d1 = process.at(SituationView(buf)) - here;
  return {std::move(d0), std::move(d1)};
}

std::vector<Rational> evaluate_capital(const Strategy& strategy, const PathPrefix& prefix) {
  std::vector<Rational> out;
  out.reserve(prefix.length() + 1);
  out.push_back(strategy.initial());
  for (std::size_t k = 0; k < prefix.length(); ++k)
    out.push_back(strategy.step(prefix.prefix(k), out.back(), prefix.at(k)));
  return out;
}

SupermartingaleReport is_supermartingale(const Strategy& strategy, const ForecastSystem& forecast,
                                         std::size_t depth, const Limits& limits,
                                         std::size_t max_violations) {
  if (depth > limits.exhaustive_depth)
    fail(ErrorKind::resource, "verification depth " + std::to_string(depth) + " exceeds the exhaustive cap " +
                                  std::to_string(limits.exhaustive_depth));

  SupermartingaleReport report;
  report.depth = depth;
  // Capitals of every situation on the current level, in lexicographic order.
  std::vector<Rational> level{strategy.initial()};
  for (std::size_t n = 0; n < depth; ++n) {
    std::vector<Rational> next;
    next.reserve(level.size() * 2);
    for (std::size_t i = 0; i < level.size(); ++i) {
      const Situation s = Situation::from_index(i, n);
      const Gamble delta = strategy.increment(s, level[i]);
      Rational upper = upper_expectation(eval_forecast(forecast, s), delta);
      if (upper.sign() > 0) {
        report.holds = false;
        if (report.violations.size() < max_violations) report.violations.push_back({s, std::move(upper)});
        if (report.violations.size() >= max_violations) return report;
      }
      next.push_back(level[i] + delta.at0);
      next.push_back(level[i] + delta.at1);
    }
    level = std::move(next);
  }
  return report;
}

Strategy rescale_test_process(const Strategy& strategy, std::size_t n, const Rational& k) {
  if (k < Rational(1)) fail(ErrorKind::domain, "rescaling constant K must be at least 1");
  if (strategy.is_multiplicative())
    return Strategy::multiplicative(make_rescaled_multiplier(strategy.multiplier(), n, k), strategy.class_tag());
  return Strategy::additive(Rational(1), make_rescaled_increments(strategy.increments(), strategy.initial(), n, k),
                            strategy.class_tag());
}

Selection selection_from_process(const Process& process, const Rational& r, std::size_t horizon,
                                 const Limits& limits) {
  if (!process->temporal() && horizon > limits.exhaustive_depth)
    fail(ErrorKind::resource, "selection horizon " + std::to_string(horizon) +
                                  " for a non-temporal process exceeds the exhaustive cap " +
                                  std::to_string(limits.exhaustive_depth));
  const Selection lazy = make_selection_from_process(process, r, limits.exhaustive_depth);
  std::vector<bool> mask(horizon);
  const std::string zeros(horizon, '0');
  for (std::size_t n = 0; n < horizon; ++n) mask[n] = lazy->at(SituationView(std::string_view(zeros).substr(0, n)));
  return make_temporal_mask(std::move(mask));
}

}  // namespace imprand
