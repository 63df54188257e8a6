#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "imprand/common.hpp"
#include "imprand/forecast.hpp"

namespace imprand {

/// Gamble on paths that depends only on the first `depth` outcomes.
/// payoff()[i] is the value on the length-depth string whose binary digits
/// (first outcome most significant) spell i.
class DepthGamble {
 public:
  DepthGamble(std::size_t depth, std::vector<Rational> payoff);
  /// Keys must be exactly the 2^depth bitstrings of that length.
  static DepthGamble from_table(std::size_t depth, const std::map<std::string, Rational>& table);
  static DepthGamble constant(std::size_t depth, const Rational& c);

  std::size_t depth() const { return depth_; }
  const std::vector<Rational>& payoff() const { return payoff_; }
  const Rational& at(const std::string& bits) const;

  DepthGamble operator-() const;
  friend DepthGamble operator+(const DepthGamble& f, const DepthGamble& g);
  friend DepthGamble operator+(const DepthGamble& f, const Rational& c);
  friend DepthGamble operator*(const Rational& c, const DepthGamble& f);
  bool dominated_by(const DepthGamble& g) const;
  Rational min() const;
  Rational max() const;

 private:
  std::size_t depth_;
  std::vector<Rational> payoff_;
};

/// Set of paths determined by their first `depth` outcomes.
class ClopenEvent {
 public:
  ClopenEvent(std::size_t depth, std::set<std::string> members);

  std::size_t depth() const { return depth_; }
  const std::set<std::string>& members() const { return members_; }
  ClopenEvent complement() const;
  DepthGamble indicator() const;

 private:
  std::size_t depth_;
  std::set<std::string> members_;
};

/// Backward recursion V(s) = upper expectation under φ(s) of x -> V(sx),
/// with V equal to the payoff on the last level. Depth above
/// limits.global_depth is a resource error.
Rational global_upper_expectation(const ForecastSystem& forecast, const DepthGamble& f, const Limits& limits = {});
/// Conjugate: -upper(-f).
Rational global_lower_expectation(const ForecastSystem& forecast, const DepthGamble& f, const Limits& limits = {});

Rational upper_probability(const ForecastSystem& forecast, const ClopenEvent& event, const Limits& limits = {});
Rational lower_probability(const ForecastSystem& forecast, const ClopenEvent& event, const Limits& limits = {});

/// Independent check of the recursion: maximizes, over every choice of one
/// endpoint of φ(s) per situation, the precise expectation of f obtained by
/// summing payoff times path probability over all leaves. Depth above
/// limits.oracle_depth is a resource error.
Rational upper_expectation_enum_oracle(const ForecastSystem& forecast, const DepthGamble& f,
                                       const Limits& limits = {});

}  // namespace imprand
