#include "cfmlab/commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>

#include "cfmlab/config.hpp"
#include "cfmlab/errors.hpp"
#include "cfmlab/verify.hpp"

#ifndef CFMLAB_VERSION
#define CFMLAB_VERSION "0.0.0"
#endif

namespace cfmlab {

namespace {

namespace fs = std::filesystem;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

ConfigMap resolve_config(const CommandOptions& options) {
  ConfigMap config = load_config(options.config);
  for (const std::string& o : options.overrides) apply_override(config, o);
  if (options.seed) config.insert_or_assign("seed", std::to_string(*options.seed));
  if (options.paths) config.insert_or_assign("n_paths", std::to_string(*options.paths));
  return config;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
  }
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string manifest(std::string_view command, const std::string& config_echo,
                     const std::vector<std::string>& outputs) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "# cfmlab run manifest\n"
      << "# tool_version: " << CFMLAB_VERSION << '\n'
      << "# command: " << command << '\n'
      << "# timestamp: " << utc_timestamp() << '\n';
  for (const std::string& o : outputs) out << "# output: " << o << '\n';
  out << "# hat_f valuation: reserves marked at S_t after arbitrage; exact for gamma = 1,"
         " a low-fee approximation for gamma < 1\n"
      << config_echo;
  return out.str();
}

template <class Body>
int guarded(std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const IoError& e) {
    log << "i/o error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const DomainError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

} // namespace

std::string steps_csv(const std::vector<StepRecord>& steps) {
  std::string out = kStepsHeader;
  out += '\n';
  for (const StepRecord& r : steps) {
    out += format_number(r.t) + ',' + format_number(r.s) + ',' + format_number(r.pool_price) + ',' +
      format_number(r.x1) + ',' + format_number(r.x2) + ',' + format_number(r.fee_income) + ',' +
      format_number(r.hat_f) + ',' + format_number(r.arb_profit) + ',';
    if (r.noise) {
      out += std::string(to_string(r.noise->venue)) + ',' + std::string(to_string(r.noise->side)) + ',' +
        format_number(r.noise->size);
    } else {
      out += "none,none,0";
    }
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const std::vector<AggregateCell>& cells) {
  std::string out = kSweepHeader;
  out += '\n';
  for (const AggregateCell& c : cells) {
    out += format_number(c.gamma) + ',' + format_number(c.sigma) + ',' + format_number(c.lambda) + ',' +
      format_number(c.mean_diff) + ',' + format_number(c.std_diff) + ',' + std::to_string(c.n_paths) + '\n';
  }
  return out;
}

int cmd_simulate(const CommandOptions& options, std::ostream& log) {
  return guarded(log, [&] {
    const SimulateSettings settings = to_simulate_settings(resolve_config(options));
    const PathResult result = run_path(settings.config, settings.path_index, true);

    ensure_directory(options.out);
    write_file(options.out / "steps.csv", steps_csv(result.steps));
    write_file(options.out / "manifest.cfg", manifest("simulate", echo_config(settings), {"steps.csv"}));

    log << "simulate: " << result.steps.size() << " steps, F=" << format_number(result.fees)
        << " F_hat=" << format_number(result.bound_fees) << " D=" << format_number(result.diff)
        << " arbitrage_trades=" << result.arb_trades << " -> " << (options.out / "steps.csv").string() << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_sweep(const CommandOptions& options, std::ostream& log) {
  return guarded(log, [&] {
    const SweepSettings settings = to_sweep_settings(resolve_config(options));
    const std::vector<AggregateCell> cells = run_sweep(settings.grid, settings.base);

    ensure_directory(options.out);
    write_file(options.out / "sweep.csv", sweep_csv(cells));
    write_file(options.out / "manifest.cfg", manifest("sweep", echo_config(settings), {"sweep.csv"}));

    log << "sweep: " << cells.size() << " cells x " << settings.base.n_paths << " paths -> "
        << (options.out / "sweep.csv").string() << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_verify(const CommandOptions& options, std::ostream& log) {
  return guarded(log, [&] {
    SimConfig base;
    if (options.seed) base.master_seed = *options.seed;

    std::ostringstream report;
    report.imbue(std::locale::classic());
    bool all_passed = true;
    for (const verify::SuiteResult& r : verify::run_all(base)) {
      all_passed = all_passed && r.passed;
      report << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    }
    log << report.str();

    ensure_directory(options.out);
    write_file(options.out / "verify_report.txt", report.str());
    return static_cast<int>(all_passed ? kExitOk : kExitVerifyFailed);
  });
}

} // namespace cfmlab
