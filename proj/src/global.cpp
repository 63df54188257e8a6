#include "imprand/global.hpp"

#include <algorithm>
#include <optional>

namespace imprand {

namespace {

std::uint64_t leaves(std::size_t depth) {
  if (depth >= 63) fail(ErrorKind::resource, "gamble depth too large");
  return std::uint64_t{1} << depth;
}

std::uint64_t index_of(const std::string& bits) {
  std::uint64_t i = 0;
  for (char c : bits) i = (i << 1) | (c == '1' ? 1U : 0U);
  return i;
}

void require_same_depth(const DepthGamble& f, const DepthGamble& g) {
  if (f.depth() != g.depth()) fail(ErrorKind::domain, "gambles of different depths");
}

void check_cap(std::size_t depth, std::size_t cap, const char* what) {
  if (depth > cap)
    fail(ErrorKind::resource, std::string(what) + " at depth " + std::to_string(depth) + " exceeds the cap " +
                                  std::to_string(cap));
}

}  // namespace

DepthGamble::DepthGamble(std::size_t depth, std::vector<Rational> payoff) : depth_(depth), payoff_(std::move(payoff)) {
  if (payoff_.size() != leaves(depth_))
    fail(ErrorKind::domain, "gamble of depth " + std::to_string(depth_) + " needs " +
                                std::to_string(leaves(depth_)) + " payoffs");
}

DepthGamble DepthGamble::from_table(std::size_t depth, const std::map<std::string, Rational>& table) {
  std::vector<Rational> payoff(leaves(depth));
  std::vector<bool> seen(payoff.size(), false);
  for (const auto& [key, value] : table) {
    const Situation s(key);
    if (s.length() != depth) fail(ErrorKind::domain, "payoff key '" + key + "' has the wrong length");
    const auto i = index_of(key);
    payoff[i] = value;
    seen[i] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    fail(ErrorKind::domain, "payoff table does not cover every string of length " + std::to_string(depth));
  return DepthGamble(depth, std::move(payoff));
}

DepthGamble DepthGamble::constant(std::size_t depth, const Rational& c) {
  return DepthGamble(depth, std::vector<Rational>(leaves(depth), c));
}

const Rational& DepthGamble::at(const std::string& bits) const {
  if (bits.size() != depth_) fail(ErrorKind::domain, "payoff lookup with the wrong length");
  return payoff_[index_of(bits)];
}

DepthGamble DepthGamble::operator-() const {
  std::vector<Rational> out;
  out.reserve(payoff_.size());
  for (const auto& v : payoff_) out.push_back(-v);
  return DepthGamble(depth_, std::move(out));
}

DepthGamble operator+(const DepthGamble& f, const DepthGamble& g) {
  require_same_depth(f, g);
  std::vector<Rational> out;
  out.reserve(f.payoff_.size());
  for (std::size_t i = 0; i < f.payoff_.size(); ++i) out.push_back(f.payoff_[i] + g.payoff_[i]);
  return DepthGamble(f.depth_, std::move(out));
}

DepthGamble operator+(const DepthGamble& f, const Rational& c) {
  std::vector<Rational> out;
  out.reserve(f.payoff_.size());
  for (const auto& v : f.payoff_) out.push_back(v + c);
  return DepthGamble(f.depth_, std::move(out));
}

DepthGamble operator*(const Rational& c, const DepthGamble& f) {
  std::vector<Rational> out;
  out.reserve(f.payoff_.size());
  for (const auto& v : f.payoff_) out.push_back(c * v);
  return DepthGamble(f.depth_, std::move(out));
}

bool DepthGamble::dominated_by(const DepthGamble& g) const {
  require_same_depth(*this, g);
  for (std::size_t i = 0; i < payoff_.size(); ++i)
    if (payoff_[i] > g.payoff_[i]) return false;
  return true;
}

Rational DepthGamble::min() const { return *std::min_element(payoff_.begin(), payoff_.end()); }
Rational DepthGamble::max() const { return *std::max_element(payoff_.begin(), payoff_.end()); }

ClopenEvent::ClopenEvent(std::size_t depth, std::set<std::string> members) : depth_(depth), members_(std::move(members)) {
  leaves(depth_);
  for (const auto& m : members_)
    if (Situation(m).length() != depth_) fail(ErrorKind::domain, "event member '" + m + "' has the wrong length");
}

ClopenEvent ClopenEvent::complement() const {
  std::set<std::string> out;
  for (std::uint64_t i = 0; i < leaves(depth_); ++i) {
    std::string bits = Situation::from_index(i, depth_).bits();
    if (!members_.contains(bits)) out.insert(std::move(bits));
  }
  return ClopenEvent(depth_, std::move(out));
}

DepthGamble ClopenEvent::indicator() const {
  std::vector<Rational> payoff(leaves(depth_), Rational(0));
  for (const auto& m : members_) payoff[index_of(m)] = Rational(1);
  return DepthGamble(depth_, std::move(payoff));
}

Rational global_upper_expectation(const ForecastSystem& forecast, const DepthGamble& f, const Limits& limits) {
  check_cap(f.depth(), limits.global_depth, "global expectation");
  std::vector<Rational> values = f.payoff();
  for (std::size_t n = f.depth(); n-- > 0;) {
    std::vector<Rational> parent(values.size() / 2);
    for (std::size_t i = 0; i < parent.size(); ++i) {
      const Situation s = Situation::from_index(i, n);
      parent[i] = upper_expectation(eval_forecast(forecast, s), Gamble{values[2 * i], values[2 * i + 1]});
    }
    values = std::move(parent);
  }
  return values.front();
}

Rational global_lower_expectation(const ForecastSystem& forecast, const DepthGamble& f, const Limits& limits) {
  return -global_upper_expectation(forecast, -f, limits);
}

Rational upper_probability(const ForecastSystem& forecast, const ClopenEvent& event, const Limits& limits) {
  return global_upper_expectation(forecast, event.indicator(), limits);
}

Rational lower_probability(const ForecastSystem& forecast, const ClopenEvent& event, const Limits& limits) {
  return global_lower_expectation(forecast, event.indicator(), limits);
}

Rational upper_expectation_enum_oracle(const ForecastSystem& forecast, const DepthGamble& f, const Limits& limits) {
  check_cap(f.depth(), limits.oracle_depth, "enumeration oracle");
  const std::size_t n = f.depth();
  const std::size_t internal = leaves(n) - 1;

  // Internal nodes in breadth-first order; node id 2^k - 1 + i is situation i on level k.
  std::vector<std::vector<Rational>> choices(internal);
  for (std::size_t k = 0, id = 0; k < n; ++k) {
    for (std::uint64_t i = 0; i < leaves(k); ++i, ++id) {
      const IntervalForecast interval = eval_forecast(forecast, Situation::from_index(i, k));
      choices[id].push_back(interval.lower());
      if (!interval.is_precise()) choices[id].push_back(interval.upper());
    }
  }

  std::vector<std::size_t> pick(internal, 0);
  std::vector<Rational> prob(2 * internal + 1);
  std::optional<Rational> best;
  while (true) {
    prob[0] = Rational(1);
    for (std::size_t id = 0; id < internal; ++id) {
      const Rational& p = choices[id][pick[id]];
      prob[2 * id + 1] = prob[id] * (Rational(1) - p);
      prob[2 * id + 2] = prob[id] * p;
    }
    Rational expectation(0);
    for (std::size_t leaf = 0; leaf <= internal; ++leaf) expectation += prob[internal + leaf] * f.payoff()[leaf];
    if (!best || expectation > *best) best = std::move(expectation);

    std::size_t id = 0;
    while (id < internal && ++pick[id] == choices[id].size()) pick[id++] = 0;
    if (id == internal) break;
  }
  return *best;
}

}  // namespace imprand
