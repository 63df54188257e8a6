#include "imprand/process.hpp"

#include <mutex>

#include <nlohmann/json.hpp>

#include "imprand/common.hpp"
#include "imprand/serialize.hpp"

namespace imprand {

namespace {

using nlohmann::json;

void check_level(std::size_t length, std::size_t levels, const char* what) {
  if (length >= levels)
    fail(ErrorKind::depth, std::string(what) + " evaluated at depth " + std::to_string(length) +
                               " beyond its " + std::to_string(levels) + " declared levels");
}

std::optional<std::size_t> min_levels(std::optional<std::size_t> a, std::optional<std::size_t> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

std::optional<std::size_t> plus_one(std::optional<std::size_t> a) {
  return a ? std::optional<std::size_t>(*a + 1) : std::nullopt;
}

void check_keys(const std::map<std::string, Gamble>& table, std::size_t depth, const char* what) {
  for (const auto& [key, _] : table)
    if (Situation(key).length() > depth)
      fail(ErrorKind::domain, std::string(what) + " key '" + key + "' is deeper than the declared depth");
}

Gamble checked_multiplier(Gamble g) {
  if (g.at0.sign() < 0 || g.at1.sign() < 0)
    fail(ErrorKind::domain, "multiplier value is negative");
  return g;
}

json table_to_json(const std::map<std::string, Gamble>& table) {
  json t = json::object();
  for (const auto& [key, g] : table) t[key] = imprand::to_json(g);
  return t;
}

// ---------------------------------------------------------------- selections

class Always final : public SelectionProcess {
 public:
  bool at(SituationView) const override { return true; }
  bool temporal() const override { return true; }
  json to_json() const override { return {{"kind", "always"}}; }
};

class Never final : public SelectionProcess {
 public:
  bool at(SituationView) const override { return false; }
  bool temporal() const override { return true; }
  json to_json() const override { return {{"kind", "never"}}; }
};

class TemporalMask final : public SelectionProcess {
 public:
  explicit TemporalMask(std::vector<bool> mask) : mask_(std::move(mask)) {}
  bool at(SituationView s) const override {
    check_level(s.length(), mask_.size(), "temporal selection mask");
    return mask_[s.length()];
  }
  bool temporal() const override { return true; }
  std::optional<std::size_t> levels() const override { return mask_.size(); }
  json to_json() const override {
    std::string bits;
    for (bool b : mask_) bits.push_back(b ? '1' : '0');
    return {{"kind", "temporal_mask"}, {"bits", bits}};
  }

 private:
  std::vector<bool> mask_;
};

class FollowSymbol final : public SelectionProcess {
 public:
  explicit FollowSymbol(int symbol) : symbol_(symbol) {
    if (symbol != 0 && symbol != 1) fail(ErrorKind::domain, "follow_symbol needs symbol 0 or 1");
  }
  bool at(SituationView s) const override { return !s.is_root() && s.last() == symbol_; }
  json to_json() const override { return {{"kind", "follow_symbol"}, {"symbol", symbol_}}; }

 private:
  int symbol_;
};

class FromProcess final : public SelectionProcess {
 public:
  FromProcess(Process process, Rational r, std::size_t limit)
      : process_(std::move(process)), r_(std::move(r)), limit_(limit) {
    if (r_.sign() < 0 || r_ > Rational(1)) fail(ErrorKind::domain, "selection threshold r outside [0,1]");
  }

  bool at(SituationView s) const override { return level(s.length()); }
  bool temporal() const override { return true; }
  std::optional<std::size_t> levels() const override {
    const auto l = process_->levels();
    if (!l) return std::nullopt;
    return *l == 0 ? 0 : *l - 1;
  }
  json to_json() const override {
    return {{"kind", "from_process"}, {"process", process_->to_json()}, {"r", r_.str()}};
  }

 private:
  bool positive_at(SituationView s) const {
    std::string buf(s.bits());
    const Rational here = process_->at(s);
    buf.push_back('0');
    const Rational after0 = process_->at(SituationView(buf));
    buf.back() = '1';
    const Rational after1 = process_->at(SituationView(buf));
    return linear_expectation(r_, Gamble{after0 - here, after1 - here}).sign() > 0;
  }

  bool compute(std::size_t n) const {
    if (process_->temporal()) {
      const std::string representative(n, '0');
      return positive_at(SituationView(representative));
    }
    if (n > limit_)
      fail(ErrorKind::resource, "selection from a non-temporal process at level " + std::to_string(n) +
                                    " exceeds the exhaustive cap " + std::to_string(limit_));
    bool any = false;
    for_each_situation(n, [&](SituationView s) {
      if (!any && positive_at(s)) any = true;
    });
    return any;
  }

  bool level(std::size_t n) const {
    std::lock_guard lock(mutex_);
    if (n < cache_.size() && cache_[n] >= 0) return cache_[n] == 1;
    const bool v = compute(n);
    if (cache_.size() <= n) cache_.resize(n + 1, -1);
    cache_[n] = v ? 1 : 0;
    return v;
  }

  Process process_;
  Rational r_;
  std::size_t limit_;
  mutable std::mutex mutex_;
  mutable std::vector<signed char> cache_;
};

// ------------------------------------------------------------ real processes

class ConstantProcess final : public RealProcess {
 public:
  explicit ConstantProcess(Rational value) : value_(std::move(value)) {}
  Rational at(SituationView) const override { return value_; }
  bool temporal() const override { return true; }
  json to_json() const override { return {{"kind", "constant"}, {"value", value_.str()}}; }

 private:
  Rational value_;
};

class TemporalProcess final : public RealProcess {
 public:
  explicit TemporalProcess(std::vector<Rational> values) : values_(std::move(values)) {}
  Rational at(SituationView s) const override {
    check_level(s.length(), values_.size(), "temporal process table");
    return values_[s.length()];
  }
  bool temporal() const override { return true; }
  std::optional<std::size_t> levels() const override { return values_.size(); }
  json to_json() const override {
    json arr = json::array();
    for (const auto& v : values_) arr.push_back(v.str());
    return {{"kind", "temporal_table"}, {"values", arr}};
  }

 private:
  std::vector<Rational> values_;
};

class CountingProcess final : public RealProcess {
 public:
  explicit CountingProcess(Selection selection) : selection_(std::move(selection)) {}
  Rational at(SituationView s) const override {
    long count = 1;
    for (std::size_t k = 0; k < s.length(); ++k) count += selection_->at(s.prefix(k)) ? 1 : 0;
    return Rational(count);
  }
  bool temporal() const override { return selection_->temporal(); }
  std::optional<std::size_t> levels() const override { return plus_one(selection_->levels()); }
  json to_json() const override {
    return {{"kind", "counting_from_selection"}, {"selection", selection_->to_json()}};
  }

 private:
  Selection selection_;
};

class MultiplierGenerated final : public RealProcess {
 public:
  explicit MultiplierGenerated(Multiplier multiplier) : multiplier_(std::move(multiplier)) {}
  Rational at(SituationView s) const override {
    Rational value(1);
    for (std::size_t k = 0; k < s.length() && !value.is_zero(); ++k)
      value *= checked_multiplier(multiplier_->at(s.prefix(k)))(s.at(k));
    return value;
  }
  std::optional<std::size_t> levels() const override { return plus_one(multiplier_->levels()); }
  json to_json() const override {
    return {{"kind", "multiplier_generated"}, {"multiplier", multiplier_->to_json()}};
  }

 private:
  Multiplier multiplier_;
};

class ExplicitProcess final : public RealProcess {
 public:
  ExplicitProcess(std::map<std::string, Rational> table, std::size_t depth)
      : table_(std::move(table)), depth_(depth) {
    for (const auto& [key, _] : table_)
      if (Situation(key).length() > depth_)
        fail(ErrorKind::domain, "explicit process key '" + key + "' is deeper than the declared depth");
  }
  Rational at(SituationView s) const override {
    check_level(s.length(), depth_ + 1, "explicit process table");
    const auto it = table_.find(std::string(s.bits()));
    if (it == table_.end())
      fail(ErrorKind::depth, "explicit process table has no value at '" + std::string(s.bits()) + "'");
    return it->second;
  }
  std::optional<std::size_t> levels() const override { return depth_ + 1; }
  json to_json() const override {
    json t = json::object();
    for (const auto& [key, v] : table_) t[key] = v.str();
    return {{"kind", "explicit_table"}, {"depth", depth_}, {"table", t}};
  }

 private:
  std::map<std::string, Rational> table_;
  std::size_t depth_;
};

class CapitalProcess final : public RealProcess {
 public:
  explicit CapitalProcess(Strategy strategy) : strategy_(std::move(strategy)) {}
  Rational at(SituationView s) const override { return strategy_.capital_at(s); }
  std::optional<std::size_t> levels() const override { return plus_one(strategy_.levels()); }
  json to_json() const override { return {{"kind", "capital"}, {"strategy", strategy_.to_json()}}; }

 private:
  Strategy strategy_;
};

// --------------------------------------------------------------- multipliers

class ConstantMultiplier final : public MultiplierProcess {
 public:
  ConstantMultiplier(Gamble gamble, json repr) : gamble_(checked_multiplier(std::move(gamble))), repr_(std::move(repr)) {}
  Gamble at(SituationView) const override { return gamble_; }
  bool uniform() const override { return true; }
  json to_json() const override { return repr_; }

 private:
  Gamble gamble_;
  json repr_;
};

class ExplicitMultiplier final : public MultiplierProcess {
 public:
  ExplicitMultiplier(std::map<std::string, Gamble> table, std::size_t depth)
      : table_(std::move(table)), depth_(depth) {
    check_keys(table_, depth_, "explicit multiplier");
    for (const auto& [_, g] : table_) checked_multiplier(g);
  }
  Gamble at(SituationView s) const override {
    check_level(s.length(), depth_ + 1, "explicit multiplier table");
    const auto it = table_.find(std::string(s.bits()));
    return it == table_.end() ? Gamble{Rational(1), Rational(1)} : it->second;
  }
  std::optional<std::size_t> levels() const override { return depth_ + 1; }
  json to_json() const override {
    return {{"kind", "explicit_table"}, {"depth", depth_}, {"table", table_to_json(table_)}};
  }

 private:
  std::map<std::string, Gamble> table_;
  std::size_t depth_;
};

class GatedMultiplier final : public MultiplierProcess {
 public:
  GatedMultiplier(Selection selection, Multiplier inner) : selection_(std::move(selection)), inner_(std::move(inner)) {}
  Gamble at(SituationView s) const override {
    return selection_->at(s) ? inner_->at(s) : Gamble{Rational(1), Rational(1)};
  }
  std::optional<std::size_t> levels() const override { return min_levels(selection_->levels(), inner_->levels()); }
  json to_json() const override {
    return {{"kind", "gated"}, {"selection", selection_->to_json()}, {"inner", inner_->to_json()}};
  }

 private:
  Selection selection_;
  Multiplier inner_;
};

class RescaledMultiplier final : public MultiplierProcess {
 public:
  RescaledMultiplier(Multiplier inner, std::size_t n, Rational k) : inner_(std::move(inner)), n_(n), k_(std::move(k)) {
    if (k_.sign() <= 0) fail(ErrorKind::domain, "rescaling constant K must be positive");
  }
  Gamble at(SituationView s) const override {
    if (s.length() < n_) return {Rational(1), Rational(1)};
    if (s.length() > n_) return inner_->at(s);
    Rational capital(1);
    for (std::size_t k = 0; k < s.length() && !capital.is_zero(); ++k)
      capital *= checked_multiplier(inner_->at(s.prefix(k)))(s.at(k));
    const Gamble d = checked_multiplier(inner_->at(s));
    return {capital * d.at0 / k_, capital * d.at1 / k_};
  }
  std::optional<std::size_t> levels() const override { return inner_->levels(); }
  json to_json() const override {
    return {{"kind", "rescaled"}, {"inner", inner_->to_json()}, {"N", n_}, {"K", k_.str()}};
  }

 private:
  Multiplier inner_;
  std::size_t n_;
  Rational k_;
};

// ---------------------------------------------------------------- increments

class ConstantIncrements final : public IncrementProcess {
 public:
  explicit ConstantIncrements(Gamble gamble) : gamble_(std::move(gamble)) {}
  Gamble at(SituationView) const override { return gamble_; }
  bool uniform() const override { return true; }
  json to_json() const override { return {{"kind", "constant"}, {"gamble", imprand::to_json(gamble_)}}; }

 private:
  Gamble gamble_;
};

class ExplicitIncrements final : public IncrementProcess {
 public:
  ExplicitIncrements(std::map<std::string, Gamble> table, std::size_t depth)
      : table_(std::move(table)), depth_(depth) {
    check_keys(table_, depth_, "explicit increment");
  }
  Gamble at(SituationView s) const override {
    check_level(s.length(), depth_ + 1, "explicit increment table");
    const auto it = table_.find(std::string(s.bits()));
    return it == table_.end() ? Gamble{Rational(0), Rational(0)} : it->second;
  }
  std::optional<std::size_t> levels() const override { return depth_ + 1; }
  json to_json() const override {
    return {{"kind", "explicit_table"}, {"depth", depth_}, {"table", table_to_json(table_)}};
  }

 private:
  std::map<std::string, Gamble> table_;
  std::size_t depth_;
};

class ProcessIncrements final : public IncrementProcess {
 public:
  explicit ProcessIncrements(Process process) : process_(std::move(process)) {}
  Gamble at(SituationView s) const override {
    std::string buf(s.bits());
    const Rational here = process_->at(s);
    buf.push_back('0');
    Rational a0 = process_->at(SituationView(buf)) - here;
    buf.back() = '1';
    Rational a1 = process_->at(SituationView(buf)) - here;
    return {std::move(a0), std::move(a1)};
  }
  std::optional<std::size_t> levels() const override {
    const auto l = process_->levels();
    if (!l) return std::nullopt;
    return *l == 0 ? 0 : *l - 1;
  }
  json to_json() const override { return {{"kind", "process_difference"}, {"process", process_->to_json()}}; }

 private:
  Process process_;
};

class RescaledIncrements final : public IncrementProcess {
 public:
  RescaledIncrements(Increments inner, Rational initial, std::size_t n, Rational k)
      : inner_(std::move(inner)), initial_(std::move(initial)), n_(n), k_(std::move(k)) {
    if (k_.sign() <= 0) fail(ErrorKind::domain, "rescaling constant K must be positive");
  }
  Gamble at(SituationView s) const override {
    if (s.length() < n_) return {Rational(0), Rational(0)};
    if (s.length() > n_) {
      const Gamble d = inner_->at(s);
      return {d.at0 / k_, d.at1 / k_};
    }
    Rational capital = initial_;
    for (std::size_t k = 0; k < s.length(); ++k) capital += inner_->at(s.prefix(k))(s.at(k));
    const Gamble d = inner_->at(s);
    return {(capital + d.at0) / k_ - Rational(1), (capital + d.at1) / k_ - Rational(1)};
  }
  std::optional<std::size_t> levels() const override { return inner_->levels(); }
  json to_json() const override {
    return {{"kind", "rescaled"}, {"inner", inner_->to_json()}, {"initial", initial_.str()},
            {"N", n_},           {"K", k_.str()}};
  }

 private:
  Increments inner_;
  Rational initial_;
  std::size_t n_;
  Rational k_;
};

}  // namespace

// ------------------------------------------------------------------ strategy

std::string to_string(StrategyClass c) {
  switch (c) {
    case StrategyClass::ML: return "ML";
    case StrategyClass::wML: return "wML";
    case StrategyClass::C: return "C";
    case StrategyClass::S: return "S";
  }
  return "ML";
}

StrategyClass strategy_class_from_string(const std::string& s) {
  if (s == "ML") return StrategyClass::ML;
  if (s == "wML") return StrategyClass::wML;
  if (s == "C") return StrategyClass::C;
  if (s == "S") return StrategyClass::S;
  fail(ErrorKind::parse, "unknown strategy class '" + s + "'");
}

Strategy Strategy::additive(Rational initial, Increments increments, StrategyClass tag) {
  if (!increments) fail(ErrorKind::domain, "additive strategy needs increments");
  Strategy s;
  s.initial_ = std::move(initial);
  s.increments_ = std::move(increments);
  s.tag_ = tag;
  return s;
}

Strategy Strategy::multiplicative(Multiplier multiplier, StrategyClass tag) {
  if (!multiplier) fail(ErrorKind::domain, "multiplicative strategy needs a multiplier");
  Strategy s;
  s.multiplier_ = std::move(multiplier);
  s.tag_ = tag;
  return s;
}

bool Strategy::uniform() const { return multiplier_ ? multiplier_->uniform() : increments_->uniform(); }

std::optional<std::size_t> Strategy::levels() const {
  return multiplier_ ? multiplier_->levels() : increments_->levels();
}

Rational Strategy::step(SituationView s, const Rational& capital, int x) const {
  if (multiplier_) {
    if (capital.is_zero()) return capital;
    return capital * checked_multiplier(multiplier_->at(s))(x);
  }
  return capital + increments_->at(s)(x);
}

Gamble Strategy::increment(SituationView s, const Rational& capital) const {
  if (multiplier_) {
    const Gamble d = checked_multiplier(multiplier_->at(s));
    return {capital * (d.at0 - Rational(1)), capital * (d.at1 - Rational(1))};
  }
  return increments_->at(s);
}

Rational Strategy::capital_at(SituationView s) const {
  Rational capital = initial_;
  for (std::size_t k = 0; k < s.length(); ++k) capital = step(s.prefix(k), capital, s.at(k));
  return capital;
}

nlohmann::json Strategy::to_json() const {
  if (multiplier_)
    return {{"kind", "multiplicative"}, {"class", to_string(tag_)}, {"multiplier", multiplier_->to_json()}};
  return {{"kind", "additive"},
          {"class", to_string(tag_)},
          {"initial", initial_.str()},
          {"increments", increments_->to_json()}};
}

// ----------------------------------------------------------------- factories

Selection make_always() { return std::make_shared<Always>(); }
Selection make_never() { return std::make_shared<Never>(); }
Selection make_temporal_mask(std::vector<bool> mask) { return std::make_shared<TemporalMask>(std::move(mask)); }
Selection make_follow_symbol(int symbol) { return std::make_shared<FollowSymbol>(symbol); }
Selection make_selection_from_process(Process process, Rational r, std::size_t limit_depth) {
  return std::make_shared<FromProcess>(std::move(process), std::move(r), limit_depth);
}

Process make_constant_process(Rational value) { return std::make_shared<ConstantProcess>(std::move(value)); }
Process make_temporal_process(std::vector<Rational> values) {
  return std::make_shared<TemporalProcess>(std::move(values));
}
Process make_counting_process(Selection selection) { return std::make_shared<CountingProcess>(std::move(selection)); }
Process make_multiplier_generated(Multiplier multiplier) {
  return std::make_shared<MultiplierGenerated>(std::move(multiplier));
}
Process make_explicit_process(std::map<std::string, Rational> table, std::size_t depth) {
  return std::make_shared<ExplicitProcess>(std::move(table), depth);
}
Process make_capital_process(Strategy strategy) { return std::make_shared<CapitalProcess>(std::move(strategy)); }

Multiplier make_unit_multiplier() {
  return std::make_shared<ConstantMultiplier>(Gamble{Rational(1), Rational(1)}, json{{"kind", "unit"}});
}

Multiplier make_constant_multiplier(Gamble gamble) {
  json repr{{"kind", "constant"}, {"gamble", to_json(gamble)}};
  return std::make_shared<ConstantMultiplier>(std::move(gamble), std::move(repr));
}

namespace {
void check_stake(const Rational& stake) {
  if (stake.sign() < 0 || stake > Rational(1)) fail(ErrorKind::domain, "stake outside [0,1]");
}
}  // namespace

Multiplier make_kelly_buy(const IntervalForecast& forecast, const Rational& stake) {
  check_stake(stake);
  const Rational& q = forecast.upper();
  if (q.is_zero()) fail(ErrorKind::domain, "kelly_buy needs a positive upper probability");
  Gamble d{Rational(1) - stake, Rational(1) + stake * (Rational(1) - q) / q};
  json repr{{"kind", "kelly_buy"}, {"lower", forecast.lower().str()}, {"upper", q.str()}, {"stake", stake.str()}};
  return std::make_shared<ConstantMultiplier>(std::move(d), std::move(repr));
}

Multiplier make_kelly_sell(const IntervalForecast& forecast, const Rational& stake) {
  check_stake(stake);
  const Rational& p = forecast.lower();
  if (p == Rational(1)) fail(ErrorKind::domain, "kelly_sell needs a lower probability below 1");
  Gamble d{Rational(1) + stake * p / (Rational(1) - p), Rational(1) - stake};
  json repr{{"kind", "kelly_sell"}, {"lower", p.str()}, {"upper", forecast.upper().str()}, {"stake", stake.str()}};
  return std::make_shared<ConstantMultiplier>(std::move(d), std::move(repr));
}

Multiplier make_explicit_multiplier(std::map<std::string, Gamble> table, std::size_t depth) {
  return std::make_shared<ExplicitMultiplier>(std::move(table), depth);
}

Multiplier make_gated_multiplier(Selection selection, Multiplier inner) {
  return std::make_shared<GatedMultiplier>(std::move(selection), std::move(inner));
}

Multiplier make_rescaled_multiplier(Multiplier inner, std::size_t n, Rational k) {
  return std::make_shared<RescaledMultiplier>(std::move(inner), n, std::move(k));
}

Increments make_constant_increments(Gamble gamble) { return std::make_shared<ConstantIncrements>(std::move(gamble)); }
Increments make_explicit_increments(std::map<std::string, Gamble> table, std::size_t depth) {
  return std::make_shared<ExplicitIncrements>(std::move(table), depth);
}
Increments make_process_increments(Process process) { return std::make_shared<ProcessIncrements>(std::move(process)); }
Increments make_rescaled_increments(Increments inner, Rational initial, std::size_t n, Rational k) {
  return std::make_shared<RescaledIncrements>(std::move(inner), std::move(initial), n, std::move(k));
}

}  // namespace imprand
