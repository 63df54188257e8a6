#include "imprand/serialize.hpp"

#include <fstream>
#include <sstream>

#include "imprand/global.hpp"
#include "imprand/randomness.hpp"

namespace imprand {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::parse, what); }

const json& field(const json& j, std::initializer_list<const char*> names) {
  if (!j.is_object()) bad("expected a JSON object");
  for (const char* name : names) {
    const auto it = j.find(name);
    if (it != j.end()) return *it;
  }
  bad(std::string("missing field '") + *names.begin() + "'");
}

const json* optional_field(const json& j, std::initializer_list<const char*> names) {
  for (const char* name : names) {
    const auto it = j.find(name);
    if (it != j.end()) return &*it;
  }
  return nullptr;
}

std::string kind_of(const json& j) {
  const json& k = field(j, {"kind"});
  if (!k.is_string()) bad("'kind' must be a string");
  return k.get<std::string>();
}

std::size_t size_from_json(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::string string_from_json(const json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

int bit_from_json(const json& j) {
  if (j.is_number_integer() && (j.get<long long>() == 0 || j.get<long long>() == 1)) return j.get<int>();
  if (j.is_string() && (j == "0" || j == "1")) return j == "1" ? 1 : 0;
  bad("expected a bit 0 or 1");
}

PathPrefix path_field(const json& j, const char* inline_key, const char* file_key, const ParseContext& ctx,
                      std::string& source) {
  if (const json* inline_bits = optional_field(j, {inline_key})) {
    if (inline_bits->is_array()) {
      std::string bits;
      for (const auto& b : *inline_bits) bits.push_back(bit_from_json(b) ? '1' : '0');
      return PathPrefix(bits);
    }
    return parse_path_text(string_from_json(*inline_bits, inline_key));
  }
  source = string_from_json(field(j, {file_key}), file_key);
  std::filesystem::path file(source);
  if (file.is_relative()) file = ctx.base_dir / file;
  if (ctx.loaded_files) ctx.loaded_files->push_back(file.string());
  return read_path_file(file);
}

std::map<std::string, Gamble> gamble_table(const json& j) {
  if (!j.is_object()) bad("table must be an object keyed by bitstrings");
  std::map<std::string, Gamble> out;
  for (const auto& [key, value] : j.items()) {
    Situation(std::string(key));
    out.emplace(key, gamble_from_json(value));
  }
  return out;
}

IntervalForecast interval_field(const json& j) {
  if (const json* i = optional_field(j, {"I", "interval", "forecast"})) return interval_from_json(*i);
  return interval_from_json(j);
}

template <typename T, typename Parse>
std::vector<T> parse_list(const json& j, const char* key, Parse parse) {
  const json* arr = &j;
  if (j.is_object()) arr = &field(j, {key});
  if (!arr->is_array()) bad(std::string("expected an array of ") + key);
  std::vector<T> out;
  for (const auto& item : *arr) out.push_back(parse(item));
  return out;
}

template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

}  // namespace

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) bad("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

json to_json(const Rational& r) { return r.str(); }
json to_json(const IntervalForecast& i) { return {{"lower", i.lower().str()}, {"upper", i.upper().str()}}; }
json to_json(const Gamble& g) { return json::array({g.at0.str(), g.at1.str()}); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  bad("rational must be a \"num/den\" string or an integer");
}

IntervalForecast interval_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) bad("interval array must have two entries");
    return {rational_from_json(j[0]), rational_from_json(j[1])};
  }
  return {rational_from_json(field(j, {"lower"})), rational_from_json(field(j, {"upper"}))};
}

Gamble gamble_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) bad("gamble array must have two entries");
    return {rational_from_json(j[0]), rational_from_json(j[1])};
  }
  return {rational_from_json(field(j, {"0"})), rational_from_json(field(j, {"1"}))};
}

Forecast parse_forecast(const json& j, const ParseContext& ctx) {
  return guarded([&]() -> Forecast {
    const std::string kind = kind_of(j);
    if (kind == "stationary") return make_stationary(interval_field(j));
    if (kind == "alternating") return make_alternating(rational_from_json(field(j, {"p"})), rational_from_json(field(j, {"q"})));
    if (kind == "witness") {
      std::string source;
      PathPrefix w = path_field(j, "witness", "witness_file", ctx, source);
      return make_witness(rational_from_json(field(j, {"p"})), rational_from_json(field(j, {"q"})), std::move(w),
                          source);
    }
    if (kind == "perfect") {
      std::string source;
      PathPrefix path = path_field(j, "path", "path_file", ctx, source);
      return make_perfect(std::move(path), source);
    }
    if (kind == "temporal_table") {
      std::vector<IntervalForecast> levels;
      for (const auto& l : field(j, {"levels"})) levels.push_back(interval_from_json(l));
      return make_temporal_table(std::move(levels));
    }
    if (kind == "explicit_table") {
      std::map<std::string, IntervalForecast> table;
      const json& t = field(j, {"table"});
      if (!t.is_object()) bad("forecast table must be an object");
      for (const auto& [key, value] : t.items()) table.emplace(key, interval_from_json(value));
      return make_explicit_forecast(std::move(table), size_from_json(field(j, {"depth"}), "depth"));
    }
    bad("unknown forecast kind '" + kind + "'");
  });
}

Selection parse_selection(const json& j, const ParseContext& ctx) {
  return guarded([&]() -> Selection {
    const std::string kind = kind_of(j);
    if (kind == "always") return make_always();
    if (kind == "never") return make_never();
    if (kind == "temporal_mask") {
      const json& bits = field(j, {"bits"});
      std::vector<bool> mask;
      if (bits.is_string()) {
        for (char c : bits.get<std::string>()) {
          if (c != '0' && c != '1') bad("temporal_mask bits must be 0 or 1");
          mask.push_back(c == '1');
        }
      } else if (bits.is_array()) {
        for (const auto& b : bits) mask.push_back(bit_from_json(b) == 1);
      } else {
        bad("temporal_mask bits must be a string or array");
      }
      return make_temporal_mask(std::move(mask));
    }
    if (kind == "follow_symbol") return make_follow_symbol(bit_from_json(field(j, {"symbol"})));
    if (kind == "from_process")
      return make_selection_from_process(parse_process(field(j, {"process", "F"}), ctx),
                                         rational_from_json(field(j, {"r"})), ctx.limits.exhaustive_depth);
    bad("unknown selection kind '" + kind + "'");
  });
}

Process parse_process(const json& j, const ParseContext& ctx) {
  return guarded([&]() -> Process {
    const std::string kind = kind_of(j);
    if (kind == "constant") return make_constant_process(rational_from_json(field(j, {"value"})));
    if (kind == "temporal_table") {
      std::vector<Rational> values;
      for (const auto& v : field(j, {"values"})) values.push_back(rational_from_json(v));
      return make_temporal_process(std::move(values));
    }
    if (kind == "counting_from_selection") return make_counting_process(parse_selection(field(j, {"selection", "sel"}), ctx));
    if (kind == "multiplier_generated")
      return make_multiplier_generated(parse_multiplier(field(j, {"multiplier", "mult"}), ctx));
    if (kind == "explicit_table") {
      std::map<std::string, Rational> table;
      const json& t = field(j, {"table"});
      if (!t.is_object()) bad("process table must be an object");
      for (const auto& [key, value] : t.items()) table.emplace(key, rational_from_json(value));
      return make_explicit_process(std::move(table), size_from_json(field(j, {"depth"}), "depth"));
    }
    if (kind == "capital") return make_capital_process(parse_strategy(field(j, {"strategy"}), ctx));
    bad("unknown process kind '" + kind + "'");
  });
}

Multiplier parse_multiplier(const json& j, const ParseContext& ctx) {
  return guarded([&]() -> Multiplier {
    const std::string kind = kind_of(j);
    if (kind == "unit") return make_unit_multiplier();
    if (kind == "constant") return make_constant_multiplier(gamble_from_json(field(j, {"gamble"})));
    if (kind == "kelly_buy") return make_kelly_buy(interval_field(j), rational_from_json(field(j, {"stake"})));
    if (kind == "kelly_sell") return make_kelly_sell(interval_field(j), rational_from_json(field(j, {"stake"})));
    if (kind == "explicit_table")
      return make_explicit_multiplier(gamble_table(field(j, {"table"})), size_from_json(field(j, {"depth"}), "depth"));
    if (kind == "gated")
      return make_gated_multiplier(parse_selection(field(j, {"selection"}), ctx),
                                   parse_multiplier(field(j, {"inner"}), ctx));
    if (kind == "rescaled")
      return make_rescaled_multiplier(parse_multiplier(field(j, {"inner"}), ctx), size_from_json(field(j, {"N"}), "N"),
                                      rational_from_json(field(j, {"K"})));
    bad("unknown multiplier kind '" + kind + "'");
  });
}

Increments parse_increments(const json& j, const ParseContext& ctx) {
  return guarded([&]() -> Increments {
    const std::string kind = kind_of(j);
    if (kind == "constant") return make_constant_increments(gamble_from_json(field(j, {"gamble"})));
    if (kind == "explicit_table")
      return make_explicit_increments(gamble_table(field(j, {"table"})), size_from_json(field(j, {"depth"}), "depth"));
    if (kind == "process_difference") return make_process_increments(parse_process(field(j, {"process"}), ctx));
    if (kind == "rescaled")
      return make_rescaled_increments(parse_increments(field(j, {"inner"}), ctx), rational_from_json(field(j, {"initial"})),
                                      size_from_json(field(j, {"N"}), "N"), rational_from_json(field(j, {"K"})));
    bad("unknown increments kind '" + kind + "'");
  });
}

Strategy parse_strategy(const json& j, const ParseContext& ctx) {
  return guarded([&]() -> Strategy {
    const std::string kind = kind_of(j);
    StrategyClass tag = StrategyClass::ML;
    if (const json* c = optional_field(j, {"class"})) {
      try {
        tag = strategy_class_from_string(string_from_json(*c, "class"));
      } catch (const Error& e) {
        bad(e.what());
      }
    }
    if (kind == "multiplicative") return Strategy::multiplicative(parse_multiplier(field(j, {"multiplier"}), ctx), tag);
    if (kind == "additive") {
      Rational initial(1);
      if (const json* i = optional_field(j, {"initial"})) initial = rational_from_json(*i);
      return Strategy::additive(std::move(initial), parse_increments(field(j, {"increments"}), ctx), tag);
    }
    return Strategy::multiplicative(parse_multiplier(j, ctx), tag);
  });
}

std::vector<Strategy> parse_strategy_list(const json& j, const ParseContext& ctx) {
  return parse_list<Strategy>(j, "strategies", [&](const json& item) { return parse_strategy(item, ctx); });
}

std::vector<Selection> parse_selection_list(const json& j, const ParseContext& ctx) {
  return parse_list<Selection>(j, "selections", [&](const json& item) { return parse_selection(item, ctx); });
}

std::vector<Process> parse_process_list(const json& j, const ParseContext& ctx) {
  return parse_list<Process>(j, "processes", [&](const json& item) { return parse_process(item, ctx); });
}

DepthGamble parse_depth_gamble(const json& j) {
  return guarded([&] {
    const std::size_t depth = size_from_json(field(j, {"depth"}), "depth");
    const json& payoff = field(j, {"payoff"});
    if (payoff.is_array()) {
      std::vector<Rational> values;
      for (const auto& v : payoff) values.push_back(rational_from_json(v));
      return DepthGamble(depth, std::move(values));
    }
    if (!payoff.is_object()) bad("payoff must be an object keyed by bitstrings");
    std::map<std::string, Rational> table;
    for (const auto& [key, value] : payoff.items()) table.emplace(key, rational_from_json(value));
    return DepthGamble::from_table(depth, table);
  });
}

ClopenEvent parse_event(const json& j) {
  return guarded([&] {
    const std::size_t depth = size_from_json(field(j, {"depth"}), "depth");
    std::set<std::string> members;
    for (const auto& m : field(j, {"members"})) members.insert(string_from_json(m, "event member"));
    return ClopenEvent(depth, std::move(members));
  });
}

GrowthFunction parse_growth(const json& j) {
  return guarded([&] {
    const std::string kind = kind_of(j);
    if (kind == "linear") return GrowthFunction::linear(rational_from_json(field(j, {"slope"})));
    if (kind == "log2_floor") return GrowthFunction::log2_floor();
    if (kind == "sqrt_floor") return GrowthFunction::sqrt_floor();
    if (kind == "table") {
      std::vector<Rational> values;
      for (const auto& v : field(j, {"values"})) values.push_back(rational_from_json(v));
      return GrowthFunction::table(std::move(values));
    }
    bad("unknown growth kind '" + kind + "'");
  });
}

std::vector<GrowthFunction> parse_growth_list(std::string_view spec) {
  std::vector<GrowthFunction> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', start), spec.size());
    const std::string_view item = spec.substr(start, comma - start);
    if (item.empty()) bad("empty growth function name");
    if (item.starts_with("linear:")) out.push_back(GrowthFunction::linear(Rational::parse(item.substr(7))));
    else if (item == "log2_floor") out.push_back(GrowthFunction::log2_floor());
    else if (item == "sqrt_floor") out.push_back(GrowthFunction::sqrt_floor());
    else bad("unknown growth function '" + std::string(item) + "'");
    start = comma + 1;
  }
  return out;
}

}  // namespace imprand
