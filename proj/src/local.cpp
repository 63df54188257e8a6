#include "imprand/local.hpp"

#include "imprand/common.hpp"

namespace imprand {

IntervalForecast::IntervalForecast(Rational lower, Rational upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.sign() < 0 || upper_ > Rational(1) || upper_ < lower_)
    fail(ErrorKind::domain, "invalid interval forecast [" + lower_.str() + ", " + upper_.str() + "]");
}

Rational linear_expectation(const Rational& p, const Gamble& f) {
  if (p.sign() < 0 || p > Rational(1)) fail(ErrorKind::domain, "probability " + p.str() + " outside [0,1]");
  return p * f.at1 + (Rational(1) - p) * f.at0;
}

Rational upper_expectation(const IntervalForecast& forecast, const Gamble& f) {
  // E_p(f) is affine in p, so the maximum sits at an endpoint.
  return max(linear_expectation(forecast.lower(), f), linear_expectation(forecast.upper(), f));
}

Rational lower_expectation(const IntervalForecast& forecast, const Gamble& f) {
  return min(linear_expectation(forecast.lower(), f), linear_expectation(forecast.upper(), f));
}

bool is_offered(const IntervalForecast& forecast, const Gamble& f) {
  return upper_expectation(forecast, f).sign() <= 0;
}

Gamble ConeDecomposition::reconstruct() const {
  // alpha (p - x) + beta (x - q) at x = 0 and x = 1
  return {alpha * p - beta * q, alpha * (p - Rational(1)) + beta * (Rational(1) - q)};
}

bool ConeDecomposition::admissible_for(const IntervalForecast& forecast) const {
  return alpha.sign() >= 0 && beta.sign() >= 0 && p <= forecast.lower() && q >= forecast.upper();
}

std::optional<ConeDecomposition> cone_decompose(const IntervalForecast& forecast, const Gamble& f) {
  const Rational upper = upper_expectation(forecast, f);
  if (upper.sign() > 0) return std::nullopt;

  if (f.at1 > f.at0) {
    // f = beta (X - q)
    return ConeDecomposition{Rational(0), Rational(0), f.at1 - f.at0, f.at0 / (f.at0 - f.at1)};
  }
  if (f.at1 < f.at0) {
    // f = alpha (p - X)
    return ConeDecomposition{f.at0 - f.at1, f.at0 / (f.at0 - f.at1), Rational(0), Rational(1)};
  }
  // constant f = upper <= 0, written as alpha (0 - X) + beta (X - 1)
  return ConeDecomposition{-upper, Rational(0), -upper, Rational(1)};
}

}  // namespace imprand
