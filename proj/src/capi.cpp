#include "imprand/imprand.h"

#include <cstring>
#include <new>

#include <nlohmann/json.hpp>

#include "imprand/coherence.hpp"
#include "imprand/generate.hpp"
#include "imprand/global.hpp"
#include "imprand/martingale.hpp"
#include "imprand/randomness.hpp"
#include "imprand/serialize.hpp"

using nlohmann::json;
using namespace imprand;

struct imprand_forecast {
  Forecast forecast;
  std::vector<std::string> sources;
};

struct imprand_path {
  PathPrefix path;
};

struct imprand_strategies {
  std::vector<Strategy> strategies;
};

struct imprand_selections {
  std::vector<Selection> selections;
};

namespace {

thread_local std::string last_error;

imprand_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain:
    case ErrorKind::parse: return IMPRAND_INVALID;
    case ErrorKind::depth:
    case ErrorKind::resource: return IMPRAND_RESOURCE;
    case ErrorKind::semantics: return IMPRAND_SEMANTICS;
    case ErrorKind::rejected: return IMPRAND_REJECTED;
  }
  return IMPRAND_INTERNAL;
}

template <typename Fn>
imprand_status guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return IMPRAND_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const json::exception& e) {
    last_error = e.what();
    return IMPRAND_INVALID;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return IMPRAND_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return IMPRAND_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorKind::domain, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  require(out, "output pointer");
  *out = dup(j.dump());
}

Limits limits_of(const imprand_limits* l) {
  if (l == nullptr) return {};
  return {l->exhaustive_depth, l->global_depth, l->oracle_depth};
}

ParseContext context(const char* base_dir, const imprand_limits* limits, std::vector<std::string>* loaded) {
  ParseContext ctx;
  if (base_dir != nullptr) ctx.base_dir = base_dir;
  ctx.limits = limits_of(limits);
  ctx.loaded_files = loaded;
  return ctx;
}

const Strategy& strategy_at(const imprand_strategies* s, std::size_t index) {
  require(s, "strategies");
  if (index >= s->strategies.size()) fail(ErrorKind::domain, "strategy index out of range");
  return s->strategies[index];
}

json nullable(const std::optional<Rational>& r) { return r ? json(r->str()) : json(nullptr); }

}  // namespace

extern "C" {

const char* imprand_version(void) { return "1.0.0"; }
const char* imprand_last_error(void) { return last_error.c_str(); }
void imprand_string_free(char* s) { std::free(s); }
const char* imprand_generator_name(void) { return kGeneratorName; }

void imprand_default_limits(imprand_limits* out) {
  if (out == nullptr) return;
  const Limits l;
  *out = {l.exhaustive_depth, l.global_depth, l.oracle_depth};
}

imprand_status imprand_rational_compare(const char* a, const char* b, int* out) {
  return guard([&] {
    require(a, "a");
    require(b, "b");
    require(out, "output pointer");
    const auto c = Rational::parse(a) <=> Rational::parse(b);
    *out = c < 0 ? -1 : (c > 0 ? 1 : 0);
  });
}

imprand_status imprand_local_expectations(const char* interval_json, const char* gamble_json, char** out_json) {
  return guard([&] {
    require(interval_json, "interval");
    require(gamble_json, "gamble");
    const IntervalForecast i = interval_from_json(parse_json_text(interval_json));
    const Gamble f = gamble_from_json(parse_json_text(gamble_json));
    json j{{"upper", upper_expectation(i, f).str()},
           {"lower", lower_expectation(i, f).str()},
           {"offered", is_offered(i, f)},
           {"cone", nullptr}};
    if (const auto c = cone_decompose(i, f))
      j["cone"] = {{"alpha", c->alpha.str()}, {"p", c->p.str()}, {"beta", c->beta.str()}, {"q", c->q.str()}};
    emit(out_json, j);
  });
}

imprand_status imprand_forecast_parse(const char* text, const char* base_dir, const imprand_limits* limits,
                                      imprand_forecast** out) {
  return guard([&] {
    require(text, "forecast spec");
    require(out, "output pointer");
    auto handle = std::make_unique<imprand_forecast>();
    handle->forecast = parse_forecast(parse_json_text(text), context(base_dir, limits, &handle->sources));
    *out = handle.release();
  });
}

void imprand_forecast_free(imprand_forecast* f) { delete f; }

imprand_status imprand_forecast_to_json(const imprand_forecast* f, char** out_json) {
  return guard([&] {
    require(f, "forecast");
    emit(out_json, f->forecast->to_json());
  });
}

imprand_status imprand_forecast_sources(const imprand_forecast* f, char** out_json) {
  return guard([&] {
    require(f, "forecast");
    emit(out_json, json(f->sources));
  });
}

imprand_status imprand_forecast_at(const imprand_forecast* f, const char* situation, char** out_json) {
  return guard([&] {
    require(f, "forecast");
    require(situation, "situation");
    const Situation s{std::string(situation)};
    emit(out_json, to_json(eval_forecast(*f->forecast, s)));
  });
}

imprand_status imprand_construct(const imprand_forecast* f, std::size_t depth, char** out_json) {
  return guard([&] {
    require(f, "forecast");
    const ForecastSystem& system = *f->forecast;
    if (!system.temporal()) fail(ErrorKind::semantics, "only temporal systems have a level table");
    if (const auto levels = system.levels(); levels && depth > *levels)
      fail(ErrorKind::depth, "forecast data covers " + std::to_string(*levels) + " levels, fewer than depth " +
                                 std::to_string(depth));
    const std::string zeros(depth, '0');
    std::vector<IntervalForecast> levels;
    for (std::size_t n = 0; n < depth; ++n)
      levels.push_back(eval_forecast(system, SituationView(std::string_view(zeros).substr(0, n))));
    const Forecast table = make_temporal_table(levels);
    for (std::size_t n = 0; n < depth; ++n) {
      const SituationView s(std::string_view(zeros).substr(0, n));
      if (table->at(s) != system.at(s)) fail(ErrorKind::semantics, "level table does not round-trip");
    }
    emit(out_json, {{"table", table->to_json()}, {"reference", system.to_json()}});
  });
}

imprand_status imprand_path_parse(const char* text, imprand_path** out) {
  return guard([&] {
    require(text, "path text");
    require(out, "output pointer");
    *out = new imprand_path{parse_path_text(text)};
  });
}

imprand_status imprand_path_read(const char* file, imprand_path** out) {
  return guard([&] {
    require(file, "path file");
    require(out, "output pointer");
    *out = new imprand_path{read_path_file(file)};
  });
}

imprand_status imprand_path_write(const imprand_path* p, const char* file) {
  return guard([&] {
    require(p, "path");
    require(file, "path file");
    write_path_file(file, p->path);
  });
}

imprand_status imprand_path_canonical(const char* kind, std::size_t n, imprand_path** out) {
  return guard([&] {
    require(kind, "kind");
    require(out, "output pointer");
    *out = new imprand_path{canonical_path(canonical_path_from_string(kind), n)};
  });
}

imprand_status imprand_path_sample(const imprand_forecast* f, std::size_t n, std::uint64_t seed, imprand_path** out) {
  return guard([&] {
    require(f, "forecast");
    require(out, "output pointer");
    *out = new imprand_path{sample_path(*f->forecast, n, seed)};
  });
}

std::size_t imprand_path_length(const imprand_path* p) { return p == nullptr ? 0 : p->path.length(); }

imprand_status imprand_path_bits(const imprand_path* p, char** out) {
  return guard([&] {
    require(p, "path");
    require(out, "output pointer");
    *out = dup(p->path.bits());
  });
}

void imprand_path_free(imprand_path* p) { delete p; }

imprand_status imprand_strategies_parse(const char* text, const char* base_dir, const imprand_limits* limits,
                                        imprand_strategies** out) {
  return guard([&] {
    require(text, "strategy spec");
    require(out, "output pointer");
    const json j = parse_json_text(text);
    const ParseContext ctx = context(base_dir, limits, nullptr);
    auto handle = std::make_unique<imprand_strategies>();
    if (j.is_object() && j.contains("kind")) handle->strategies.push_back(parse_strategy(j, ctx));
    else handle->strategies = parse_strategy_list(j, ctx);
    *out = handle.release();
  });
}

std::size_t imprand_strategies_count(const imprand_strategies* s) {
  return s == nullptr ? 0 : s->strategies.size();
}

void imprand_strategies_free(imprand_strategies* s) { delete s; }

imprand_status imprand_verify(const imprand_strategies* s, std::size_t index, const imprand_forecast* f,
                              std::size_t depth, std::size_t max_violations, const imprand_limits* limits,
                              char** out_json) {
  return guard([&] {
    const Strategy& strategy = strategy_at(s, index);
    require(f, "forecast");
    const auto report = is_supermartingale(strategy, *f->forecast, depth, limits_of(limits), max_violations);
    json violations = json::array();
    for (const auto& v : report.violations)
      violations.push_back({{"situation", v.situation.bits()}, {"upper_expectation", v.upper_expectation.str()}});
    emit(out_json, {{"holds", report.holds}, {"depth", report.depth}, {"violations", violations}});
  });
}

imprand_status imprand_capital(const imprand_strategies* s, std::size_t index, const imprand_path* p,
                               char** out_json) {
  return guard([&] {
    const Strategy& strategy = strategy_at(s, index);
    require(p, "path");
    json arr = json::array();
    for (const auto& c : evaluate_capital(strategy, p->path)) arr.push_back(c.str());
    emit(out_json, arr);
  });
}

imprand_status imprand_rescale(const imprand_strategies* s, std::size_t index, std::size_t n, const char* k,
                               char** out_json) {
  return guard([&] {
    const Strategy& strategy = strategy_at(s, index);
    require(k, "rescaling constant");
    emit(out_json, rescale_test_process(strategy, n, Rational::parse(k)).to_json());
  });
}

imprand_status imprand_selections_parse(const char* text, const char* base_dir, const imprand_limits* limits,
                                        imprand_selections** out) {
  return guard([&] {
    require(text, "selection spec");
    require(out, "output pointer");
    const json j = parse_json_text(text);
    const ParseContext ctx = context(base_dir, limits, nullptr);
    auto handle = std::make_unique<imprand_selections>();
    if (j.is_object() && j.contains("kind")) handle->selections.push_back(parse_selection(j, ctx));
    else handle->selections = parse_selection_list(j, ctx);
    *out = handle.release();
  });
}

imprand_status imprand_selections_default(imprand_selections** out) {
  return guard([&] {
    require(out, "output pointer");
    *out = new imprand_selections{default_selection_battery()};
  });
}

imprand_status imprand_selections_from_processes(const char* text, const char* p, const char* q,
                                                 std::size_t horizon, const imprand_limits* limits,
                                                 imprand_selections** out) {
  return guard([&] {
    require(text, "process spec");
    require(p, "p");
    require(q, "q");
    require(out, "output pointer");
    const Limits l = limits_of(limits);
    const auto processes = parse_process_list(parse_json_text(text), context(nullptr, limits, nullptr));
    *out = new imprand_selections{
        build_selection_battery(Rational::parse(p), Rational::parse(q), processes, horizon, l)};
  });
}

std::size_t imprand_selections_count(const imprand_selections* s) {
  return s == nullptr ? 0 : s->selections.size();
}

imprand_status imprand_selections_to_json(const imprand_selections* s, char** out_json) {
  return guard([&] {
    require(s, "selections");
    json arr = json::array();
    for (const auto& sel : s->selections) arr.push_back(sel->to_json());
    emit(out_json, arr);
  });
}

void imprand_selections_free(imprand_selections* s) { delete s; }

imprand_status imprand_expect(const imprand_forecast* f, const char* gamble_json, int oracle,
                              const imprand_limits* limits, char** out_json) {
  return guard([&] {
    require(f, "forecast");
    require(gamble_json, "gamble");
    const json j = parse_json_text(gamble_json);
    const Limits l = limits_of(limits);
    const DepthGamble g = j.is_object() && j.contains("members") ? parse_event(j).indicator() : parse_depth_gamble(j);
    json out{{"depth", g.depth()},
             {"upper", global_upper_expectation(*f->forecast, g, l).str()},
             {"lower", global_lower_expectation(*f->forecast, g, l).str()}};
    if (oracle != 0) out["oracle"] = upper_expectation_enum_oracle(*f->forecast, g, l).str();
    emit(out_json, out);
  });
}

imprand_status imprand_run_battery(const imprand_path* p, const imprand_forecast* f, const imprand_strategies* s,
                                   const char* growth, const imprand_limits* limits, char** out_json) {
  return guard([&] {
    require(p, "path");
    require(f, "forecast");
    require(s, "strategies");
    const auto functions = growth == nullptr ? default_growth_functions() : parse_growth_list(growth);
    const auto outcomes = run_battery(p->path, *f->forecast, s->strategies, functions, limits_of(limits));
    json names = json::array();
    for (const auto& g : functions) names.push_back(g.name());
    json rows = json::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& o = outcomes[i];
      json exceed = json::array();
      for (const auto& e : o.exceedances) exceed.push_back(e ? json(*e) : json(nullptr));
      json row{{"index", i},
               {"accepted", o.accepted},
               {"rejection", o.rejection},
               {"verification", o.verification},
               {"violation", nullptr},
               {"max_capital", o.max_capital.str()},
               {"argmax_step", o.argmax_step},
               {"final_capital", o.final_capital.str()},
               {"exceedances", exceed}};
      if (o.violation)
        row["violation"] = {{"situation", o.violation->situation.bits()},
                            {"upper_expectation", o.violation->upper_expectation.str()}};
      rows.push_back(std::move(row));
    }
    emit(out_json, {{"growth", names}, {"strategies", rows}});
  });
}

imprand_status imprand_church(const imprand_path* p, const imprand_selections* s, const imprand_forecast* f,
                              const char* tolerance, std::size_t min_count, char** out_json) {
  return guard([&] {
    require(p, "path");
    require(s, "selections");
    require(f, "forecast");
    FrequencyOptions options;
    if (tolerance != nullptr) options.tolerance = Rational::parse(tolerance);
    if (options.tolerance.sign() < 0) fail(ErrorKind::domain, "tolerance must be non-negative");
    options.min_count = min_count;
    json rows = json::array();
    for (std::size_t i = 0; i < s->selections.size(); ++i) {
      const FreqReport r = church_statistic(p->path, *s->selections[i], *f->forecast, options);
      rows.push_back({{"index", i},
                      {"selected", r.selected},
                      {"ones", r.ones},
                      {"frequency", nullable(r.frequency)},
                      {"lower_statistic", r.lower_statistic.str()},
                      {"upper_statistic", r.upper_statistic.str()},
                      {"verdict", to_string(r.verdict)}});
    }
    emit(out_json, rows);
  });
}

imprand_status imprand_estimate(const imprand_path* p, const imprand_selections* s, std::size_t min_count,
                                char** out_json) {
  return guard([&] {
    require(p, "path");
    require(s, "selections");
    const IntervalForecast i = estimate_interval(p->path, s->selections, min_count);
    json rows = json::array();
    for (std::size_t k = 0; k < s->selections.size(); ++k) {
      const SelectionFrequency f = selected_frequency(p->path, *s->selections[k]);
      rows.push_back({{"index", k},
                      {"selected", f.selected},
                      {"ones", f.ones},
                      {"frequency", nullable(f.frequency)},
                      {"qualifies", f.selected >= min_count && f.frequency.has_value()}});
    }
    emit(out_json, {{"interval", i.str()},
                    {"lower", i.lower().str()},
                    {"upper", i.upper().str()},
                    {"min_count", min_count},
                    {"selections", rows}});
  });
}

imprand_status imprand_coherence(std::size_t trials, std::uint64_t seed, int inject_fault, char** out_json) {
  return guard([&] { emit(out_json, run_coherence_suite(trials, seed, inject_fault != 0).to_json()); });
}

}  // extern "C"
