#pragma once
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cfmlab/engine.hpp"

namespace cfmlab {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfigError = 2,
  kExitIoError = 3,
};

struct CommandOptions {
  std::filesystem::path config;
  std::filesystem::path out{"."};
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> paths;
  std::vector<std::string> overrides; // key=value
};

inline constexpr const char* kStepsHeader =
  "t,S,pool_price,x1,x2,fee_income,hat_f,arb_profit,noise_venue,noise_side,noise_size";
inline constexpr const char* kSweepHeader = "gamma,sigma,lambda,mean_diff,std_diff,n_paths";

// CSV bodies, newline-terminated with the header first.
std::string steps_csv(const std::vector<StepRecord>& steps);
std::string sweep_csv(const std::vector<AggregateCell>& cells);

// Writes steps.csv and manifest.cfg for one path.
int cmd_simulate(const CommandOptions& options, std::ostream& log);

// Writes sweep.csv and manifest.cfg for a gamma x sigma x lambda grid.
int cmd_sweep(const CommandOptions& options, std::ostream& log);

// Runs the verification suites and writes verify_report.txt.
int cmd_verify(const CommandOptions& options, std::ostream& log);

} // namespace cfmlab
