#include "imprand/forecast.hpp"

#include <nlohmann/json.hpp>

#include "imprand/common.hpp"
#include "imprand/serialize.hpp"

namespace imprand {

namespace {

using nlohmann::json;

void require_level(const ForecastSystem& f, SituationView s) {
  const auto levels = f.levels();
  if (levels && s.length() >= *levels)
    fail(ErrorKind::depth, "forecast evaluated at depth " + std::to_string(s.length()) +
                               " but only " + std::to_string(*levels) + " levels are available");
}

class Stationary final : public ForecastSystem {
 public:
  explicit Stationary(IntervalForecast interval) : interval_(std::move(interval)) {}
  IntervalForecast at(SituationView) const override { return interval_; }
  bool temporal() const override { return true; }
  bool stationary() const override { return true; }
  json to_json() const override {
    return {{"kind", "stationary"}, {"lower", interval_.lower().str()}, {"upper", interval_.upper().str()}};
  }

 private:
  IntervalForecast interval_;
};

class Alternating final : public ForecastSystem {
 public:
  Alternating(const Rational& p, const Rational& q) : odd_(p), even_(q) {}
  IntervalForecast at(SituationView s) const override { return s.length() % 2 == 1 ? odd_ : even_; }
  bool temporal() const override { return true; }
  json to_json() const override {
    return {{"kind", "alternating"}, {"p", odd_.lower().str()}, {"q", even_.lower().str()}};
  }

 private:
  IntervalForecast odd_;
  IntervalForecast even_;
};

class Witness final : public ForecastSystem {
 public:
  Witness(const Rational& p, const Rational& q, PathPrefix witness, std::string source)
      : p_(p), q_(q), witness_(std::move(witness)), source_(std::move(source)) {
    if (!(p < q)) fail(ErrorKind::domain, "witness system requires p < q");
  }
  IntervalForecast at(SituationView s) const override {
    require_level(*this, s);
    return witness_.at(s.length()) == 0 ? p_ : q_;
  }
  bool temporal() const override { return true; }
  std::optional<std::size_t> levels() const override { return witness_.length(); }
  json to_json() const override {
    json j{{"kind", "witness"}, {"p", p_.lower().str()}, {"q", q_.lower().str()}};
    if (source_.empty()) j["witness"] = witness_.bits();
    else j["witness_file"] = source_;
    return j;
  }

 private:
  IntervalForecast p_;
  IntervalForecast q_;
  PathPrefix witness_;
  std::string source_;
};

class Perfect final : public ForecastSystem {
 public:
  Perfect(PathPrefix path, std::string source) : path_(std::move(path)), source_(std::move(source)) {}
  IntervalForecast at(SituationView s) const override {
    require_level(*this, s);
    return IntervalForecast(Rational(path_.at(s.length())));
  }
  bool temporal() const override { return true; }
  std::optional<std::size_t> levels() const override { return path_.length(); }
  json to_json() const override {
    json j{{"kind", "perfect"}};
    if (source_.empty()) j["path"] = path_.bits();
    else j["path_file"] = source_;
    return j;
  }

 private:
  PathPrefix path_;
  std::string source_;
};

class TemporalTable final : public ForecastSystem {
 public:
  explicit TemporalTable(std::vector<IntervalForecast> levels) : levels_(std::move(levels)) {}
  IntervalForecast at(SituationView s) const override {
    require_level(*this, s);
    return levels_[s.length()];
  }
  bool temporal() const override { return true; }
  std::optional<std::size_t> levels() const override { return levels_.size(); }
  json to_json() const override {
    json arr = json::array();
    for (const auto& i : levels_) arr.push_back(imprand::to_json(i));
    return {{"kind", "temporal_table"}, {"levels", arr}};
  }

 private:
  std::vector<IntervalForecast> levels_;
};

class ExplicitTable final : public ForecastSystem {
 public:
  ExplicitTable(std::map<std::string, IntervalForecast> table, std::size_t depth)
      : table_(std::move(table)), depth_(depth) {
    for (const auto& [key, _] : table_) {
      Situation check{key};
      if (check.length() > depth_)
        fail(ErrorKind::domain, "explicit forecast key '" + key + "' is deeper than the declared depth");
    }
  }
  IntervalForecast at(SituationView s) const override {
    require_level(*this, s);
    const auto it = table_.find(std::string(s.bits()));
    return it == table_.end() ? IntervalForecast::vacuous() : it->second;
  }
  std::optional<std::size_t> levels() const override { return depth_ + 1; }
  json to_json() const override {
    json table = json::object();
    for (const auto& [key, i] : table_) table[key] = imprand::to_json(i);
    return {{"kind", "explicit_table"}, {"depth", depth_}, {"table", table}};
  }

 private:
  std::map<std::string, IntervalForecast> table_;
  std::size_t depth_;
};

}  // namespace

Forecast make_stationary(const IntervalForecast& interval) { return std::make_shared<Stationary>(interval); }

Forecast make_alternating(const Rational& p, const Rational& q) {
  return std::make_shared<Alternating>(p, q);
}

Forecast make_witness(const Rational& p, const Rational& q, PathPrefix witness, std::string source_file) {
  return std::make_shared<Witness>(p, q, std::move(witness), std::move(source_file));
}

Forecast make_perfect(PathPrefix path, std::string source_file) {
  return std::make_shared<Perfect>(std::move(path), std::move(source_file));
}

Forecast make_temporal_table(std::vector<IntervalForecast> levels) {
  return std::make_shared<TemporalTable>(std::move(levels));
}

Forecast make_explicit_forecast(std::map<std::string, IntervalForecast> table, std::size_t depth) {
  return std::make_shared<ExplicitTable>(std::move(table), depth);
}

IntervalForecast eval_forecast(const ForecastSystem& forecast, SituationView s) {
  require_level(forecast, s);
  return forecast.at(s);
}

bool contains(const ForecastSystem& inner, const ForecastSystem& outer, std::size_t depth,
              std::size_t limit_depth) {
  if (inner.temporal() && outer.temporal()) {
    std::string zeros(depth, '0');
    for (std::size_t n = 0; n <= depth; ++n) {
      const SituationView s(std::string_view(zeros).substr(0, n));
      if (!eval_forecast(inner, s).subset_of(eval_forecast(outer, s))) return false;
    }
    return true;
  }
  if (depth > limit_depth)
    fail(ErrorKind::resource, "containment check at depth " + std::to_string(depth) +
                                  " exceeds the exhaustive cap " + std::to_string(limit_depth));
  bool ok = true;
  for (std::size_t n = 0; n <= depth && ok; ++n) {
    for_each_situation(n, [&](SituationView s) {
      if (ok && !eval_forecast(inner, s).subset_of(eval_forecast(outer, s))) ok = false;
    });
  }
  return ok;
}

}  // namespace imprand
