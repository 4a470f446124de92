#pragma once
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cfmlab/agents.hpp"
#include "cfmlab/pool.hpp"
#include "cfmlab/pricing.hpp"

namespace cfmlab {

struct SimConfig {
  double s0{10.0};
  double x1_0{100.0};
  double x2_0{10.0};
  double theta{0.5};
  double gamma{0.997};
  double sigma{0.4};
  double lambda{50.0};
  double p{0.9};
  double size_std{1.0};
  double r{0.0};
  double horizon{1.0};
  std::uint64_t n_steps{1000};
  std::uint64_t n_paths{100};
  std::uint64_t master_seed{20230101};

  double dt() const noexcept { return horizon / static_cast<double>(n_steps); }
  PoolState initial_pool() const noexcept { return {x1_0, x2_0, theta, gamma, 0.0, 0.0}; }
  MarketParams market() const noexcept { return {s0, sigma, 0.0, r}; }
  NoiseTraderParams noise() const noexcept { return {lambda, p, size_std}; }
};

// Throws ConfigError naming the first offending field.
void validate(const SimConfig& config);

struct NoiseEvent {
  Venue venue;
  TradeSide side;
  double size;
};

struct StepRecord {
  double t{0.0};
  double s{0.0};
  double pool_price{0.0}; // spot price after the arbitrageur has acted
  double pool_value{0.0}; // reserves marked at s after the arbitrageur has acted
  double x1{0.0};         // reserves at the end of the step
  double x2{0.0};
  double fee_income{0.0}; // f_t dt: all pool fees this step, asset-2 fees at s
  double hat_f{0.0};      // bound rate times dt, pool marked at s after arbitrage
  double arb_profit{0.0};
  bool arb_traded{false};
  std::optional<NoiseEvent> noise;
};

struct PathResult {
  double fees{0.0};       // F
  double bound_fees{0.0}; // F-hat
  double diff{0.0};       // D = F-hat - F
  std::uint64_t arb_trades{0};
  std::uint64_t noise_arrivals{0};
  std::uint64_t noise_cfm_trades{0};
  std::vector<StepRecord> steps; // filled only when requested
};

// Exact driftless GBM transition: s exp(-sigma^2 dt / 2 + sigma sqrt(dt) z).
double gbm_step(double s, double sigma, double dt, double z);

// Per step: price update, arbitrage, optional noise trade, record.
// Deterministic in (config.master_seed, path_index).
PathResult run_path(const SimConfig& config, std::uint64_t path_index, bool keep_steps = false);

struct SweepGrid {
  std::vector<double> gammas;
  std::vector<double> sigmas;
  std::vector<double> lambdas;
};

struct AggregateCell {
  double gamma{0.0};
  double sigma{0.0};
  double lambda{0.0};
  double mean_diff{0.0};
  double std_diff{0.0}; // sample std (n-1); zero for a single path
  std::uint64_t n_paths{0};
  double mean_arb_trades{0.0};
  double mean_fees{0.0};
  double mean_bound_fees{0.0};
};

struct SampleStats {
  double mean;
  double std; // n-1 denominator, zero when n < 2
};

SampleStats sample_stats(const std::vector<double>& values);

AggregateCell aggregate(double gamma, double sigma, double lambda, const std::vector<PathResult>& paths);

// Runs config.n_paths paths for every (gamma, sigma, lambda) cell. Path i uses
// the same random stream in every cell. Result rows are sorted by
// (lambda, sigma, gamma). `threads` = 0 picks the hardware concurrency.
std::vector<AggregateCell> run_sweep(const SweepGrid& grid, const SimConfig& base, unsigned threads = 0);

enum class FeeStream { bound, zero };

struct HedgeRow {
  std::uint64_t n_steps{0};
  double median_abs_z{0.0}; // median |Z_T| / psi0
  double fraction_negative{0.0};
  std::vector<double> terminal_wealth; // Z_T / psi0 per path
};

struct HedgeReport {
  std::vector<HedgeRow> rows;
};

// Delta-hedged pool position with fee income streamed at the bound (or not at
// all), simulated on closed-form pool values along GBM paths.
HedgeReport verify_hedge(const SimConfig& config, const std::vector<std::uint64_t>& step_counts,
                         FeeStream stream = FeeStream::bound);

// Runs fn(i) for i in [0, n) on a small thread pool.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn);

} // namespace cfmlab

#include "cfmlab/detail/parallel.hpp"
