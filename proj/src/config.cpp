#include "cfmlab/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <locale>
#include <sstream>

#include "cfmlab/errors.hpp"

namespace cfmlab {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

void check_known(std::string_view key) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw ConfigError(std::string(key), "unknown key");
  }
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_uint(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool is_list(std::string_view raw) {
  raw = trim(raw);
  return !raw.empty() && raw.front() == '[';
}

std::vector<double> parse_list(std::string_view key, std::string_view raw) {
  raw = trim(raw);
  if (!is_list(raw)) return {parse_double(key, raw)};
  if (raw.back() != ']') throw ConfigError(std::string(key), "unterminated list");
  raw = trim(raw.substr(1, raw.size() - 2));
  std::vector<double> values;
  if (raw.empty()) return values;
  while (true) {
    const auto comma = raw.find(',');
    values.push_back(parse_double(key, raw.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    raw.remove_prefix(comma + 1);
  }
  return values;
}

const std::string* find(const ConfigMap& config, std::string_view key) {
  const auto it = config.find(key);
  return it == config.end() ? nullptr : &it->second;
}

double scalar(const ConfigMap& config, std::string_view key, double fallback) {
  const std::string* raw = find(config, key);
  if (!raw) return fallback;
  if (is_list(*raw)) throw ConfigError(std::string(key), "expected a single value, not a list");
  return parse_double(key, *raw);
}

std::uint64_t integer(const ConfigMap& config, std::string_view key, std::uint64_t fallback) {
  const std::string* raw = find(config, key);
  return raw ? parse_uint(key, *raw) : fallback;
}

const std::string& required(const ConfigMap& config, std::string_view key) {
  const std::string* raw = find(config, key);
  if (!raw) throw ConfigError(std::string(key), "required key is missing");
  return *raw;
}

// Fields shared by both commands, excluding gamma, sigma and lambda.
SimConfig common_fields(const ConfigMap& config) {
  for (const auto& [key, value] : config) check_known(key);
  SimConfig c;
  c.s0 = scalar(config, "s0", c.s0);
  c.x1_0 = scalar(config, "x1_0", c.x1_0);
  c.x2_0 = scalar(config, "x2_0", c.x2_0);
  c.theta = scalar(config, "theta", c.theta);
  c.p = scalar(config, "p", c.p);
  c.size_std = scalar(config, "size_std", c.size_std);
  c.r = scalar(config, "r", c.r);
  c.horizon = scalar(config, "horizon", c.horizon);
  c.n_steps = integer(config, "n_steps", c.n_steps);
  c.n_paths = integer(config, "n_paths", c.n_paths);
  c.master_seed = integer(config, "seed", c.master_seed);
  return c;
}

void echo_common(std::ostringstream& out, const SimConfig& c) {
  out << "s0 = " << format_number(c.s0) << '\n'
      << "x1_0 = " << format_number(c.x1_0) << '\n'
      << "x2_0 = " << format_number(c.x2_0) << '\n'
      << "theta = " << format_number(c.theta) << '\n'
      << "p = " << format_number(c.p) << '\n'
      << "size_std = " << format_number(c.size_std) << '\n'
      << "r = " << format_number(c.r) << '\n'
      << "horizon = " << format_number(c.horizon) << '\n'
      << "n_steps = " << c.n_steps << '\n'
      << "n_paths = " << c.n_paths << '\n'
      << "seed = " << c.master_seed << '\n';
}

std::string format_list(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_number(values[i]);
  }
  return out + "]";
}

} // namespace

const std::vector<std::string_view>& known_keys() {
  static const std::vector<std::string_view> keys{
    "s0", "x1_0", "x2_0", "theta", "gamma", "sigma", "lambda", "p", "size_std",
    "r", "horizon", "n_steps", "n_paths", "seed", "path_index",
  };
  return keys;
}

ConfigMap parse_config(std::string_view text) {
  ConfigMap config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!valid_key(key)) {
      throw ConfigError(std::string(key), "line " + std::to_string(line_no) + ": invalid key");
    }
    if (value.empty()) throw ConfigError(std::string(key), "empty value");
    if (!config.emplace(std::string(key), std::string(value)).second) {
      throw ConfigError(std::string(key), "duplicate key");
    }
  }
  return config;
}

ConfigMap load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return parse_config(buffer.str());
}

void apply_override(ConfigMap& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(std::string(assignment), "override must have the form key=value");
  }
  const std::string_view key = trim(assignment.substr(0, eq));
  const std::string_view value = trim(assignment.substr(eq + 1));
  if (!valid_key(key)) throw ConfigError(std::string(key), "invalid key in override");
  if (value.empty()) throw ConfigError(std::string(key), "empty value in override");
  config.insert_or_assign(std::string(key), std::string(value));
}

SimulateSettings to_simulate_settings(const ConfigMap& config) {
  SimulateSettings s;
  s.config = common_fields(config);
  for (std::string_view key : {"gamma", "sigma", "lambda"}) {
    if (is_list(required(config, key))) {
      throw ConfigError(std::string(key), "simulate expects a single value, not a list");
    }
  }
  s.config.gamma = scalar(config, "gamma", 0.0);
  s.config.sigma = scalar(config, "sigma", 0.0);
  s.config.lambda = scalar(config, "lambda", 0.0);
  s.path_index = integer(config, "path_index", 0);
  validate(s.config);
  return s;
}

SweepSettings to_sweep_settings(const ConfigMap& config) {
  SweepSettings s;
  s.base = common_fields(config);
  if (find(config, "path_index")) throw ConfigError("path_index", "not used by sweep");
  s.grid.gammas = parse_list("gamma", required(config, "gamma"));
  s.grid.sigmas = parse_list("sigma", required(config, "sigma"));
  s.grid.lambdas = parse_list("lambda", required(config, "lambda"));
  const std::array<std::pair<const char*, const std::vector<double>*>, 3> lists{{
    {"gamma", &s.grid.gammas}, {"sigma", &s.grid.sigmas}, {"lambda", &s.grid.lambdas}}};
  for (const auto& [key, values] : lists) {
    if (values->empty()) throw ConfigError(key, "list must not be empty");
  }
  s.base.gamma = s.grid.gammas.front();
  s.base.sigma = s.grid.sigmas.front();
  s.base.lambda = s.grid.lambdas.front();
  validate(s.base);
  for (double g : s.grid.gammas) {
    if (!(g > 0.0 && g <= 1.0)) throw ConfigError("gamma", "values must lie in (0,1]");
  }
  for (double v : s.grid.sigmas) {
    if (!(v >= 0.0)) throw ConfigError("sigma", "values must be non-negative");
  }
  for (double v : s.grid.lambdas) {
    if (!(v >= 0.0)) throw ConfigError("lambda", "values must be non-negative");
  }
  return s;
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::general, 17);
  return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

std::string echo_config(const SimulateSettings& settings) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  const SimConfig& c = settings.config;
  out << "gamma = " << format_number(c.gamma) << '\n'
      << "sigma = " << format_number(c.sigma) << '\n'
      << "lambda = " << format_number(c.lambda) << '\n';
  echo_common(out, c);
  out << "path_index = " << settings.path_index << '\n';
  return out.str();
}

std::string echo_config(const SweepSettings& settings) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "gamma = " << format_list(settings.grid.gammas) << '\n'
      << "sigma = " << format_list(settings.grid.sigmas) << '\n'
      << "lambda = " << format_list(settings.grid.lambdas) << '\n';
  echo_common(out, settings.base);
  return out.str();
}

} // namespace cfmlab
