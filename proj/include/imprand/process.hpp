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

// Processes on the binary event tree. Every implementation is an immutable
// node; composite kinds hold shared pointers to their children, so specs are
// cheap to copy and safe to evaluate concurrently.

/// Zero-one valued process deciding which next outcomes are selected.
class SelectionProcess {
 public:
  virtual ~SelectionProcess() = default;
  virtual bool at(SituationView s) const = 0;
  virtual bool temporal() const { return false; }
  virtual std::optional<std::size_t> levels() const { return std::nullopt; }
  virtual nlohmann::json to_json() const = 0;
};
using Selection = std::shared_ptr<const SelectionProcess>;

/// Real-valued process F on situations.
class RealProcess {
 public:
  virtual ~RealProcess() = default;
  virtual Rational at(SituationView s) const = 0;
  virtual bool temporal() const { return false; }
  /// Evaluable for |s| < levels.
  virtual std::optional<std::size_t> levels() const { return std::nullopt; }
  virtual nlohmann::json to_json() const = 0;
};
using Process = std::shared_ptr<const RealProcess>;

/// Non-negative gamble process D; the test process it generates is the
/// running product of D along the path.
class MultiplierProcess {
 public:
  virtual ~MultiplierProcess() = default;
  virtual Gamble at(SituationView s) const = 0;
  /// Same gamble in every situation.
  virtual bool uniform() const { return false; }
  virtual std::optional<std::size_t> levels() const { return std::nullopt; }
  virtual nlohmann::json to_json() const = 0;
};
using Multiplier = std::shared_ptr<const MultiplierProcess>;

/// Gamble process giving the additive capital increments ΔM(s).
class IncrementProcess {
 public:
  virtual ~IncrementProcess() = default;
  virtual Gamble at(SituationView s) const = 0;
  virtual bool uniform() const { return false; }
  virtual std::optional<std::size_t> levels() const { return std::nullopt; }
  virtual nlohmann::json to_json() const = 0;
};
using Increments = std::shared_ptr<const IncrementProcess>;

/// Declared implementability class. Metadata only: nothing at runtime can
/// certify lower semicomputability.
enum class StrategyClass { ML, wML, C, S };

std::string to_string(StrategyClass c);
StrategyClass strategy_class_from_string(const std::string& s);

/// Sceptic's betting strategy, either additive (initial capital plus the
/// increments ΔM) or multiplicative (capital 1 times the running product of
/// a multiplier process).
class Strategy {
 public:
  static Strategy additive(Rational initial, Increments increments, StrategyClass tag = StrategyClass::ML);
  static Strategy multiplicative(Multiplier multiplier, StrategyClass tag = StrategyClass::ML);

  bool is_multiplicative() const { return multiplier_ != nullptr; }
  const Rational& initial() const { return initial_; }
  StrategyClass class_tag() const { return tag_; }
  const Multiplier& multiplier() const { return multiplier_; }
  const Increments& increments() const { return increments_; }

  /// Increments are situation-independent in the sense that matters for
  /// verification: the same additive gamble, or the same multiplier.
  bool uniform() const;
  /// Bets are defined for |s| < levels.
  std::optional<std::size_t> levels() const;

  /// Capital after outcome x, given capital at s.
  Rational step(SituationView s, const Rational& capital, int x) const;
  /// ΔM(s) given the capital at s.
  Gamble increment(SituationView s, const Rational& capital) const;
  /// M(s), walking from the root.
  Rational capital_at(SituationView s) const;

  nlohmann::json to_json() const;

 private:
  Strategy() = default;
  Rational initial_{1};
  StrategyClass tag_ = StrategyClass::ML;
  Multiplier multiplier_;
  Increments increments_;
};

// Selections
Selection make_always();
Selection make_never();
/// mask[n] is the selection at every situation of length n.
Selection make_temporal_mask(std::vector<bool> mask);
/// 1 iff s is nonempty and its last outcome equals symbol.
Selection make_follow_symbol(int symbol);
/// Lazily evaluated S^r_F: selects level n iff E_r(ΔF(s)) > 0 for some |s| = n.
/// Levels of a non-temporal F are enumerated; past limit_depth that is a
/// resource error.
Selection make_selection_from_process(Process process, Rational r, std::size_t limit_depth = 16);

// Real processes
Process make_constant_process(Rational value);
Process make_temporal_process(std::vector<Rational> values);
/// F(s) = 1 + number of selected prefixes strictly before s.
Process make_counting_process(Selection selection);
Process make_multiplier_generated(Multiplier multiplier);
/// Table keyed by bitstring; keys must cover every situation up to depth.
Process make_explicit_process(std::map<std::string, Rational> table, std::size_t depth);
/// Capital process of a strategy.
Process make_capital_process(Strategy strategy);

// Multipliers
Multiplier make_unit_multiplier();
Multiplier make_constant_multiplier(Gamble gamble);
/// D(1) = 1 + stake (1-q)/q, D(0) = 1 - stake, with q = forecast.upper() > 0.
Multiplier make_kelly_buy(const IntervalForecast& forecast, const Rational& stake);
/// D(0) = 1 + stake p/(1-p), D(1) = 1 - stake, with p = forecast.lower() < 1.
Multiplier make_kelly_sell(const IntervalForecast& forecast, const Rational& stake);
/// Situations missing from the table (within depth) get the unit multiplier.
Multiplier make_explicit_multiplier(std::map<std::string, Gamble> table, std::size_t depth);
/// inner where the selection is 1, unit elsewhere.
Multiplier make_gated_multiplier(Selection selection, Multiplier inner);
/// Multiplier of the rescaled test process: unit below level N, T(sx)/K at
/// level N, and the inner multiplier above.
Multiplier make_rescaled_multiplier(Multiplier inner, std::size_t n, Rational k);

// Additive increments
Increments make_constant_increments(Gamble gamble);
/// Situations missing from the table (within depth) get the zero gamble.
Increments make_explicit_increments(std::map<std::string, Gamble> table, std::size_t depth);
/// ΔF of a real process.
Increments make_process_increments(Process process);
/// Increments of the rescaled capital: zero below level N, T(sx)/K - 1 at
/// level N, ΔT/K above.
Increments make_rescaled_increments(Increments inner, Rational initial, std::size_t n, Rational k);

}  // namespace imprand
