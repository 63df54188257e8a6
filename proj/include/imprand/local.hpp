#pragma once

#include <optional>

#include "imprand/rational.hpp"

namespace imprand {

/// Payoff function on the binary outcome space {0,1}.
struct Gamble {
  Rational at0;
  Rational at1;

  const Rational& operator()(int outcome) const { return outcome == 0 ? at0 : at1; }
  const Rational& min() const { return imprand::min(at0, at1); }
  const Rational& max() const { return imprand::max(at0, at1); }

  /// The identity gamble X.
  static Gamble identity() { return {Rational(0), Rational(1)}; }
  static Gamble constant(const Rational& c) { return {c, c}; }

  Gamble operator-() const { return {-at0, -at1}; }
  friend Gamble operator+(const Gamble& f, const Gamble& g) { return {f.at0 + g.at0, f.at1 + g.at1}; }
  friend Gamble operator-(const Gamble& f, const Gamble& g) { return {f.at0 - g.at0, f.at1 - g.at1}; }
  friend Gamble operator+(const Gamble& f, const Rational& c) { return {f.at0 + c, f.at1 + c}; }
  friend Gamble operator-(const Gamble& f, const Rational& c) { return {f.at0 - c, f.at1 - c}; }
  friend Gamble operator*(const Rational& c, const Gamble& f) { return {c * f.at0, c * f.at1}; }
  friend bool operator==(const Gamble&, const Gamble&) = default;

  /// Pointwise order f <= g.
  bool dominated_by(const Gamble& g) const { return at0 <= g.at0 && at1 <= g.at1; }
};

/// Closed interval [lower, upper] inside [0,1]: bounds on the probability of outcome 1.
class IntervalForecast {
 public:
  IntervalForecast(Rational lower, Rational upper);
  explicit IntervalForecast(const Rational& precise) : IntervalForecast(precise, precise) {}

  static IntervalForecast vacuous() { return {Rational(0), Rational(1)}; }

  const Rational& lower() const { return lower_; }
  const Rational& upper() const { return upper_; }
  bool is_precise() const { return lower_ == upper_; }
  /// this ⊆ outer
  bool subset_of(const IntervalForecast& outer) const {
    return outer.lower_ <= lower_ && upper_ <= outer.upper_;
  }
  bool contains(const Rational& p) const { return lower_ <= p && p <= upper_; }

  /// "[lower, upper]" with both endpoints in num/den form.
  std::string str() const { return "[" + lower_.str() + ", " + upper_.str() + "]"; }

  friend bool operator==(const IntervalForecast&, const IntervalForecast&) = default;

 private:
  Rational lower_;
  Rational upper_;
};

/// E_p(f) = p f(1) + (1-p) f(0). Throws domain error unless 0 <= p <= 1.
Rational linear_expectation(const Rational& p, const Gamble& f);

/// Max of the linear expectations at the two endpoints.
Rational upper_expectation(const IntervalForecast& forecast, const Gamble& f);
/// Min of the linear expectations at the two endpoints.
Rational lower_expectation(const IntervalForecast& forecast, const Gamble& f);

/// True iff Forecaster is willing to offer f, i.e. its upper expectation is <= 0.
bool is_offered(const IntervalForecast& forecast, const Gamble& f);

/// Witness that an offered gamble lies in the cone alpha(p - X) + beta(X - q)
/// with p <= lower, q >= upper and alpha, beta >= 0.
struct ConeDecomposition {
  Rational alpha;
  Rational p;
  Rational beta;
  Rational q;

  Gamble reconstruct() const;
  bool admissible_for(const IntervalForecast& forecast) const;
  friend bool operator==(const ConeDecomposition&, const ConeDecomposition&) = default;
};

/// Canonical decomposition following the three-way case split on f(1) vs f(0).
/// Unused prices are pinned to p = 0 and q = 1. Empty iff f is not offered.
std::optional<ConeDecomposition> cone_decompose(const IntervalForecast& forecast, const Gamble& f);

}  // namespace imprand
