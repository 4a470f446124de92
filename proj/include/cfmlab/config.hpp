#pragma once
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfmlab/engine.hpp"

namespace cfmlab {

// Flat `key = value` text. Values are numbers or bracketed lists
// `key = [a, b, c]`; `#` starts a comment. Raw values are kept as written.
using ConfigMap = std::map<std::string, std::string, std::less<>>;

ConfigMap parse_config(std::string_view text);

// Throws IoError when the file cannot be read.
ConfigMap load_config(const std::filesystem::path& path);

// Applies one `key=value` override, replacing any existing value.
void apply_override(ConfigMap& config, std::string_view assignment);

// Keys accepted in a config file.
const std::vector<std::string_view>& known_keys();

struct SimulateSettings {
  SimConfig config;
  std::uint64_t path_index{0};
};

// Single-scenario settings. gamma, sigma and lambda are required scalars;
// everything else falls back to SimConfig defaults.
SimulateSettings to_simulate_settings(const ConfigMap& config);

struct SweepSettings {
  SimConfig base;
  SweepGrid grid;
};

// gamma, sigma and lambda are required and may be scalars or lists.
SweepSettings to_sweep_settings(const ConfigMap& config);

// 17 significant digits with a period decimal separator, independent of the
// global locale; reads back to the same double.
std::string format_number(double value);

// Config text that reproduces `settings` when parsed again.
std::string echo_config(const SimulateSettings& settings);
std::string echo_config(const SweepSettings& settings);

} // namespace cfmlab
