// Command-line front end. Talks to the library only through imprand.h.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "imprand/imprand.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitProperty = 2;
constexpr int kExitUsage = 64;

struct Failure {
  int code;
  std::string message;
};

void check(imprand_status status) {
  if (status != IMPRAND_OK) throw Failure{static_cast<int>(status), imprand_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using ForecastPtr = std::unique_ptr<imprand_forecast, Deleter<imprand_forecast, imprand_forecast_free>>;
using PathPtr = std::unique_ptr<imprand_path, Deleter<imprand_path, imprand_path_free>>;
using StrategiesPtr = std::unique_ptr<imprand_strategies, Deleter<imprand_strategies, imprand_strategies_free>>;
using SelectionsPtr = std::unique_ptr<imprand_selections, Deleter<imprand_selections, imprand_selections_free>>;

/// Takes ownership of a library string.
std::string take(char* s) {
  std::string out(s == nullptr ? "" : s);
  imprand_string_free(s);
  return out;
}

template <typename Call>
json call_json(Call&& call) {
  char* out = nullptr;
  check(call(&out));
  return json::parse(take(out));
}

std::string read_file(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "cannot open " + file};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sha256_file(const std::string& file) {
  const std::string data = read_file(file);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &size, EVP_sha256(), nullptr) != 1)
    throw Failure{kExitUsage, "cannot hash " + file};
  std::ostringstream hex;
  for (unsigned int i = 0; i < size; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  void input(const std::string& role, const std::string& file) {
    inputs_.push_back({{"role", role}, {"file", file}, {"sha256", sha256_file(file)}});
  }
  void config(const std::string& key, json value) { config_[key] = std::move(value); }
  void seed(std::uint64_t s) { seed_ = s; }

  json to_json() const {
    return {{"command", command_},
            {"tool", "imprand"},
            {"version", imprand_version()},
            {"inputs", inputs_},
            {"config", config_},
            {"seed", seed_ ? json(*seed_) : json(nullptr)}};
  }

 private:
  std::string command_;
  json inputs_ = json::array();
  json config_ = json::object();
  std::optional<std::uint64_t> seed_;
};

void write_text(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw Failure{kExitUsage, "cannot write " + out};
  file << text;
}

/// JSON outputs carry the manifest inline.
void write_json(const std::string& out, json body, const Manifest& manifest) {
  body["manifest"] = manifest.to_json();
  write_text(out, body.dump(2) + "\n");
}

/// Non-JSON outputs get a sidecar manifest, or one on stderr.
void write_sidecar(const std::string& out, const Manifest& manifest) {
  const std::string text = manifest.to_json().dump(2) + "\n";
  if (out.empty()) std::cerr << text;
  else write_text(out + ".manifest.json", text);
}

imprand_limits limits() {
  imprand_limits l;
  imprand_default_limits(&l);
  if (const char* env = std::getenv("IMPRAND_DEPTH_CAP")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') throw Failure{kExitUsage, "IMPRAND_DEPTH_CAP must be a non-negative integer"};
    l.exhaustive_depth = cap;
    l.global_depth = cap;
  }
  return l;
}

std::string base_dir_of(const std::string& file) { return fs::path(file).parent_path().string(); }

/// Accepts a forecast spec or the {"table", "reference"} output of construct.
ForecastPtr load_forecast(const std::string& file, Manifest& manifest, const imprand_limits& l) {
  manifest.input("forecast", file);
  json spec = json::parse(read_file(file), nullptr, false);
  if (spec.is_discarded()) throw Failure{kExitUsage, "malformed JSON in " + file};
  if (spec.is_object() && !spec.contains("kind") && spec.contains("table")) spec = spec["table"];
  imprand_forecast* f = nullptr;
  const std::string base = base_dir_of(file);
  check(imprand_forecast_parse(spec.dump().c_str(), base.c_str(), &l, &f));
  ForecastPtr forecast(f);
  for (const auto& source : call_json([&](char** o) { return imprand_forecast_sources(forecast.get(), o); }))
    manifest.input("forecast_data", source.get<std::string>());
  return forecast;
}

PathPtr load_path(const std::string& file, Manifest& manifest) {
  manifest.input("path", file);
  imprand_path* p = nullptr;
  check(imprand_path_read(file.c_str(), &p));
  return PathPtr(p);
}

StrategiesPtr load_strategies(const std::string& file, Manifest& manifest, const imprand_limits& l) {
  manifest.input("strategies", file);
  imprand_strategies* s = nullptr;
  const std::string base = base_dir_of(file);
  check(imprand_strategies_parse(read_file(file).c_str(), base.c_str(), &l, &s));
  return StrategiesPtr(s);
}

SelectionsPtr load_selections(const std::string& file, Manifest& manifest, const imprand_limits& l) {
  imprand_selections* s = nullptr;
  if (file.empty()) {
    check(imprand_selections_default(&s));
    manifest.config("selections", "default");
  } else {
    manifest.input("selections", file);
    const std::string base = base_dir_of(file);
    check(imprand_selections_parse(read_file(file).c_str(), base.c_str(), &l, &s));
  }
  return SelectionsPtr(s);
}

std::string csv_field(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// ------------------------------------------------------------------ commands

struct CoherenceArgs {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  bool inject_fault = false;
  std::string out;
};

int cmd_coherence(const CoherenceArgs& a) {
  if (a.trials == 0) throw Failure{kExitUsage, "--trials must be at least 1"};
  Manifest manifest("coherence");
  manifest.seed(a.seed);
  manifest.config("trials", a.trials);
  manifest.config("inject_fault", a.inject_fault);
  const json report =
      call_json([&](char** o) { return imprand_coherence(a.trials, a.seed, a.inject_fault ? 1 : 0, o); });
  write_json(a.out, report, manifest);
  if (!report.at("passed").get<bool>()) {
    std::cerr << "imprand: coherence property violated: " << report.at("counterexample").dump() << "\n";
    return kExitProperty;
  }
  return 0;
}

struct VerifyArgs {
  std::string strategy, forecast, out;
  std::size_t depth = 0;
  std::size_t max_violations = static_cast<std::size_t>(-1);
};

int cmd_verify(const VerifyArgs& a) {
  const imprand_limits l = limits();
  Manifest manifest("verify");
  manifest.config("depth", a.depth);
  manifest.config("exhaustive_depth_cap", l.exhaustive_depth);
  auto strategies = load_strategies(a.strategy, manifest, l);
  auto forecast = load_forecast(a.forecast, manifest, l);

  std::string csv = "strategy,situation,upper_expectation\n";
  bool holds = true;
  for (std::size_t i = 0; i < imprand_strategies_count(strategies.get()); ++i) {
    const json report = call_json([&](char** o) {
      return imprand_verify(strategies.get(), i, forecast.get(), a.depth, a.max_violations, &l, o);
    });
    holds = holds && report.at("holds").get<bool>();
    for (const auto& v : report.at("violations"))
      csv += std::to_string(i) + "," + v.at("situation").get<std::string>() + "," +
             v.at("upper_expectation").get<std::string>() + "\n";
  }
  write_text(a.out, csv);
  write_sidecar(a.out, manifest);
  return holds ? 0 : kExitFail;
}

struct TestArgs {
  std::string path, forecast, battery, selections, growth, out, tol = "0", format = "csv", max_capital;
  std::size_t min_count = 30;
  bool assert_pass = false;
};

int compare(const std::string& a, const std::string& b) {
  int c = 0;
  check(imprand_rational_compare(a.c_str(), b.c_str(), &c));
  return c;
}

std::string strategy_row(const json& row, const json& names) {
  const bool accepted = row.at("accepted").get<bool>();
  std::string out = "strategy," + row.at("index").dump() + "," + (accepted ? "accepted" : "rejected") + ",";
  if (accepted) {
    std::string exceed;
    for (std::size_t g = 0; g < names.size(); ++g) {
      const json& e = row.at("exceedances")[g];
      exceed += (g ? ";" : "") + names[g].get<std::string>() + "=" + (e.is_null() ? std::string("-") : e.dump());
    }
    out += csv_field(row.at("max_capital")) + "," + row.at("argmax_step").dump() + "," +
           csv_field(row.at("final_capital")) + "," + exceed;
  } else {
    out += ",,,";
  }
  return out + ",,,,\n";
}

std::string selection_row(const json& row) {
  return "selection," + row.at("index").dump() + "," + row.at("verdict").get<std::string>() + ",,,,," +
         row.at("selected").dump() + "," + csv_field(row.at("frequency")) + "," +
         csv_field(row.at("lower_statistic")) + "," + csv_field(row.at("upper_statistic")) + "\n";
}

int cmd_test(const TestArgs& a) {
  const imprand_limits l = limits();
  Manifest manifest("test");
  manifest.config("tol", a.tol);
  manifest.config("min_count", a.min_count);
  manifest.config("growth", a.growth.empty() ? "linear:1/100,sqrt_floor,log2_floor" : a.growth);
  manifest.config("assert_pass", a.assert_pass);
  manifest.config("max_capital", a.max_capital.empty() ? json(nullptr) : json(a.max_capital));
  manifest.config("format", a.format);
  manifest.config("exhaustive_depth_cap", l.exhaustive_depth);
  auto path = load_path(a.path, manifest);
  auto forecast = load_forecast(a.forecast, manifest, l);
  auto strategies = load_strategies(a.battery, manifest, l);
  auto selections = load_selections(a.selections, manifest, l);

  const json battery = call_json([&](char** o) {
    return imprand_run_battery(path.get(), forecast.get(), strategies.get(),
                               a.growth.empty() ? nullptr : a.growth.c_str(), &l, o);
  });
  const json freq = call_json([&](char** o) {
    return imprand_church(path.get(), selections.get(), forecast.get(), a.tol.c_str(), a.min_count, o);
  });

  std::vector<std::string> problems;
  for (const auto& row : battery.at("strategies")) {
    if (!row.at("accepted").get<bool>()) {
      std::cerr << "imprand: strategy " << row.at("index") << " rejected: " << row.at("rejection").get<std::string>()
                << "\n";
    } else if (!a.max_capital.empty() && compare(row.at("max_capital").get<std::string>(), a.max_capital) >= 0) {
      problems.push_back("strategy " + row.at("index").dump() + " reached capital " +
                         row.at("max_capital").get<std::string>());
    }
  }
  for (const auto& row : freq) {
    const std::string verdict = row.at("verdict").get<std::string>();
    if (verdict == "fail_low" || verdict == "fail_high")
      problems.push_back("selection " + row.at("index").dump() + " " + verdict);
  }

  if (a.format == "json") {
    write_json(a.out, {{"battery", battery}, {"selections", freq}}, manifest);
  } else {
    std::string text =
        "kind,index,verdict,max_capital,argmax_step,final_capital,exceedances,selected_count,frequency,"
        "lower_stat,upper_stat\n";
    for (const auto& row : battery.at("strategies")) text += strategy_row(row, battery.at("growth"));
    for (const auto& row : freq) text += selection_row(row);
    write_text(a.out, text);
    write_sidecar(a.out, manifest);
  }
  if (!a.assert_pass) return 0;
  for (const auto& p : problems) std::cerr << "imprand: assertion failed: " << p << "\n";
  return problems.empty() ? 0 : kExitFail;
}

struct ConstructArgs {
  std::string mode, p, q, witness, out;
  std::size_t depth = 0;
};

int cmd_construct(const ConstructArgs& a) {
  const imprand_limits l = limits();
  Manifest manifest("construct");
  manifest.config("mode", a.mode);
  manifest.config("depth", a.depth);
  json spec;
  auto need = [&](const std::string& value, const char* flag) {
    if (value.empty()) throw Failure{kExitUsage, "--mode " + a.mode + " needs " + flag};
  };
  if (a.mode == "witness") {
    need(a.p, "--p");
    need(a.q, "--q");
    need(a.witness, "--witness");
    spec = {{"kind", "witness"}, {"p", a.p}, {"q", a.q}, {"witness_file", a.witness}};
  } else if (a.mode == "perfect") {
    need(a.witness, "--witness");
    spec = {{"kind", "perfect"}, {"path_file", a.witness}};
  } else {
    need(a.p, "--p");
    need(a.q, "--q");
    spec = {{"kind", "alternating"}, {"p", a.p}, {"q", a.q}};
  }
  if (!a.p.empty()) manifest.config("p", a.p);
  if (!a.q.empty()) manifest.config("q", a.q);
  imprand_forecast* f = nullptr;
  check(imprand_forecast_parse(spec.dump().c_str(), nullptr, &l, &f));
  ForecastPtr forecast(f);
  for (const auto& source : call_json([&](char** o) { return imprand_forecast_sources(forecast.get(), o); }))
    manifest.input("witness", source.get<std::string>());
  write_json(a.out, call_json([&](char** o) { return imprand_construct(forecast.get(), a.depth, o); }), manifest);
  return 0;
}

struct ExpectArgs {
  std::string forecast, gamble, out;
  bool oracle = false;
};

int cmd_expect(const ExpectArgs& a) {
  const imprand_limits l = limits();
  Manifest manifest("expect");
  manifest.config("oracle", a.oracle);
  manifest.config("global_depth_cap", l.global_depth);
  auto forecast = load_forecast(a.forecast, manifest, l);
  manifest.input("gamble", a.gamble);
  const std::string gamble = read_file(a.gamble);
  const json result =
      call_json([&](char** o) { return imprand_expect(forecast.get(), gamble.c_str(), a.oracle ? 1 : 0, &l, o); });
  write_json(a.out, result, manifest);
  if (a.oracle && compare(result.at("upper").get<std::string>(), result.at("oracle").get<std::string>()) != 0) {
    std::cerr << "imprand: recursion " << result.at("upper").get<std::string>() << " differs from enumeration "
              << result.at("oracle").get<std::string>() << "\n";
    return kExitProperty;
  }
  return 0;
}

struct SimulateArgs {
  std::string forecast, out;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

int cmd_simulate(const SimulateArgs& a) {
  const imprand_limits l = limits();
  Manifest manifest("simulate");
  manifest.seed(a.seed);
  manifest.config("n", a.n);
  auto forecast = load_forecast(a.forecast, manifest, l);
  imprand_path* p = nullptr;
  check(imprand_path_sample(forecast.get(), a.n, a.seed, &p));
  PathPtr path(p);
  check(imprand_path_write(path.get(), a.out.c_str()));
  const json meta{{"seed", a.seed},
                  {"generator", imprand_generator_name()},
                  {"forecast", call_json([&](char** o) { return imprand_forecast_to_json(forecast.get(), o); })},
                  {"n", a.n},
                  {"manifest", manifest.to_json()}};
  write_text(a.out + ".meta.json", meta.dump(2) + "\n");
  return 0;
}

struct EstimateArgs {
  std::string path, battery, processes, p, q, out;
  std::size_t min_count = 30;
};

int cmd_estimate(const EstimateArgs& a) {
  const imprand_limits l = limits();
  Manifest manifest("estimate");
  manifest.config("min_count", a.min_count);
  auto path = load_path(a.path, manifest);
  SelectionsPtr selections;
  if (!a.processes.empty()) {
    if (a.p.empty() || a.q.empty()) throw Failure{kExitUsage, "--processes needs --p and --q"};
    manifest.input("processes", a.processes);
    manifest.config("p", a.p);
    manifest.config("q", a.q);
    imprand_selections* s = nullptr;
    check(imprand_selections_from_processes(read_file(a.processes).c_str(), a.p.c_str(), a.q.c_str(),
                                            imprand_path_length(path.get()), &l, &s));
    selections.reset(s);
  } else {
    selections = load_selections(a.battery, manifest, l);
  }
  write_json(a.out,
             call_json([&](char** o) { return imprand_estimate(path.get(), selections.get(), a.min_count, o); }),
             manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Imprecise-forecast randomness toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(imprand_version()));

  CoherenceArgs coherence;
  auto* c = app.add_subcommand("coherence", "Seeded checks of the local coherence properties");
  c->add_option("--trials", coherence.trials, "Number of random cases")->capture_default_str();
  c->add_option("--seed", coherence.seed, "Seed")->capture_default_str();
  c->add_option("--out", coherence.out, "Report file (default stdout)");
  c->add_flag("--inject-fault", coherence.inject_fault, "Test hook: use a broken upper expectation")
      ->group("");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Exhaustive supermartingale check");
  v->add_option("--strategy", verify.strategy, "Strategy or battery JSON")->required();
  v->add_option("--forecast", verify.forecast, "Forecast JSON")->required();
  v->add_option("--depth", verify.depth, "Depth")->required();
  v->add_option("--max-violations", verify.max_violations, "Violations listed per strategy (default all)");
  v->add_option("--out", verify.out, "CSV file (default stdout)");

  TestArgs test;
  auto* t = app.add_subcommand("test", "Run a strategy battery and frequency tests along a path");
  t->add_option("--path", test.path, "Path file")->required();
  t->add_option("--forecast", test.forecast, "Forecast JSON")->required();
  t->add_option("--battery", test.battery, "Strategy battery JSON")->required();
  t->add_option("--selections", test.selections, "Selection battery JSON (default always, follow 0, follow 1)");
  t->add_option("--growth", test.growth, "Growth functions, e.g. linear:1/100,sqrt_floor,log2_floor");
  t->add_option("--tol", test.tol, "Frequency tolerance")->capture_default_str();
  t->add_option("--min-count", test.min_count, "Minimum selections for a verdict")->capture_default_str();
  t->add_flag("--assert-pass", test.assert_pass, "Exit 1 on a failing verdict or capital threshold");
  t->add_option("--max-capital", test.max_capital, "Capital at which --assert-pass fails");
  t->add_option("--format", test.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  t->add_option("--out", test.out, "Output file (default stdout)");

  ConstructArgs construct;
  auto* k = app.add_subcommand("construct", "Materialize a temporal forecasting system's level table");
  k->add_option("--mode", construct.mode, "witness, perfect or alternating")
      ->required()
      ->check(CLI::IsMember({"witness", "perfect", "alternating"}));
  k->add_option("--p", construct.p, "Forecast for a 0 of the witness / odd levels");
  k->add_option("--q", construct.q, "Forecast for a 1 of the witness / even levels");
  k->add_option("--witness", construct.witness, "Witness or path file");
  k->add_option("--depth", construct.depth, "Number of levels")->required();
  k->add_option("--out", construct.out, "Output file (default stdout)");

  ExpectArgs expect;
  auto* e = app.add_subcommand("expect", "Global upper and lower expectation");
  e->add_option("--forecast", expect.forecast, "Forecast JSON")->required();
  e->add_option("--gamble", expect.gamble, "Depth gamble or event JSON")->required();
  e->add_flag("--oracle", expect.oracle, "Also compute the enumeration oracle and require agreement");
  e->add_option("--out", expect.out, "Output file (default stdout)");

  SimulateArgs simulate;
  auto* s = app.add_subcommand("simulate", "Sample a path from a precise forecasting system");
  s->add_option("--forecast", simulate.forecast, "Forecast JSON")->required();
  s->add_option("--n", simulate.n, "Path length")->required();
  s->add_option("--seed", simulate.seed, "Seed")->required();
  s->add_option("--out", simulate.out, "Path file; metadata goes to <out>.meta.json")->required();

  EstimateArgs estimate;
  auto* m = app.add_subcommand("estimate", "Frequency-hull interval estimate");
  m->add_option("--path", estimate.path, "Path file")->required();
  m->add_option("--battery", estimate.battery, "Selection battery JSON (default always, follow 0, follow 1)");
  m->add_option("--processes", estimate.processes, "Real processes turned into selections at --p and --q");
  m->add_option("--p", estimate.p, "Lower rate for --processes");
  m->add_option("--q", estimate.q, "Upper rate for --processes");
  m->add_option("--min-count", estimate.min_count, "Minimum selections")->capture_default_str();
  m->add_option("--out", estimate.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& ok) {
    return app.exit(ok);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitUsage;
  }

  try {
    if (*c) return cmd_coherence(coherence);
    if (*v) return cmd_verify(verify);
    if (*t) return cmd_test(test);
    if (*k) return cmd_construct(construct);
    if (*e) return cmd_expect(expect);
    if (*s) return cmd_simulate(simulate);
    if (*m) return cmd_estimate(estimate);
  } catch (const Failure& f) {
    std::cerr << "imprand: error: " << f.message << "\n";
    return f.code;
  } catch (const json::exception& ex) {
    std::cerr << "imprand: error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
