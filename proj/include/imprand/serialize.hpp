#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "imprand/common.hpp"
#include "imprand/forecast.hpp"
#include "imprand/local.hpp"
#include "imprand/process.hpp"

namespace imprand {

// JSON encodings. Every spec object carries a "kind" discriminator;
// rationals are "num/den" strings (bare integers accepted); gambles are
// two-element arrays [f(0), f(1)]; tables are keyed by bitstring.

class DepthGamble;
class ClopenEvent;
class GrowthFunction;

struct ParseContext {
  /// Relative file references (witness_file, path_file) resolve against this.
  std::filesystem::path base_dir;
  Limits limits;
  /// When set, every file loaded while parsing is appended here.
  std::vector<std::string>* loaded_files = nullptr;
};

nlohmann::json parse_json_text(std::string_view text);
nlohmann::json read_json_file(const std::filesystem::path& file);

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const IntervalForecast& i);
nlohmann::json to_json(const Gamble& g);

Rational rational_from_json(const nlohmann::json& j);
IntervalForecast interval_from_json(const nlohmann::json& j);
Gamble gamble_from_json(const nlohmann::json& j);

Forecast parse_forecast(const nlohmann::json& j, const ParseContext& ctx = {});
Selection parse_selection(const nlohmann::json& j, const ParseContext& ctx = {});
Process parse_process(const nlohmann::json& j, const ParseContext& ctx = {});
Multiplier parse_multiplier(const nlohmann::json& j, const ParseContext& ctx = {});
Increments parse_increments(const nlohmann::json& j, const ParseContext& ctx = {});
/// Multiplier kinds are accepted directly as multiplicative strategies.
Strategy parse_strategy(const nlohmann::json& j, const ParseContext& ctx = {});

/// Accepts a bare array or an object holding the array under `key`.
std::vector<Strategy> parse_strategy_list(const nlohmann::json& j, const ParseContext& ctx = {});
std::vector<Selection> parse_selection_list(const nlohmann::json& j, const ParseContext& ctx = {});
std::vector<Process> parse_process_list(const nlohmann::json& j, const ParseContext& ctx = {});

DepthGamble parse_depth_gamble(const nlohmann::json& j);
ClopenEvent parse_event(const nlohmann::json& j);
GrowthFunction parse_growth(const nlohmann::json& j);
/// Comma-separated short form: "linear:1/100,sqrt_floor,log2_floor".
std::vector<GrowthFunction> parse_growth_list(std::string_view spec);

}  // namespace imprand
