#include "cfmlab/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "cfmlab/errors.hpp"
#include "cfmlab/random.hpp"

namespace cfmlab {

namespace {

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigError(key, what);
}

constexpr std::uint64_t kHedgeStreamTag = 0x4845444745ULL;

} // namespace

void validate(const SimConfig& c) {
  require(c.s0 > 0.0 && std::isfinite(c.s0), "s0", "must be positive");
  require(c.x1_0 > 0.0 && std::isfinite(c.x1_0), "x1_0", "must be positive");
  require(c.x2_0 > 0.0 && std::isfinite(c.x2_0), "x2_0", "must be positive");
  require(c.theta > 0.0 && c.theta < 1.0, "theta", "must lie in (0,1)");
  require(c.gamma > 0.0 && c.gamma <= 1.0, "gamma", "must lie in (0,1]");
  require(c.sigma >= 0.0 && std::isfinite(c.sigma), "sigma", "must be non-negative");
  require(c.lambda >= 0.0 && std::isfinite(c.lambda), "lambda", "must be non-negative");
  require(c.p >= 0.0 && c.p <= 1.0, "p", "must lie in [0,1]");
  require(c.size_std >= 0.0 && std::isfinite(c.size_std), "size_std", "must be non-negative");
  require(c.r >= 0.0 && std::isfinite(c.r), "r", "must be non-negative");
  require(c.horizon > 0.0 && std::isfinite(c.horizon), "horizon", "must be positive");
  require(c.n_steps >= 1, "n_steps", "must be at least 1");
  require(c.n_paths >= 1, "n_paths", "must be at least 1");
}

double gbm_step(double s, double sigma, double dt, double z) {
  if (!(s > 0.0)) throw DomainError("price must be positive");
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  return s * std::exp(-0.5 * sigma * sigma * dt + sigma * std::sqrt(dt) * z);
}

PathResult run_path(const SimConfig& config, std::uint64_t path_index, bool keep_steps) {
  validate(config);

  const double dt = config.dt();
  const NoiseTraderParams noise_params = config.noise();
  PoolState pool = config.initial_pool();
  double s = config.s0;
  PathRng rng(config.master_seed, path_index);

  PathResult result;
  if (keep_steps) result.steps.reserve(config.n_steps);

  for (std::uint64_t i = 1; i <= config.n_steps; ++i) {
    const StepDraws draws = rng.next();
    s = gbm_step(s, config.sigma, dt, draws.z);

    const double fees1_before = pool.fees_collected_1;
    const double fees2_before = pool.fees_collected_2;

    StepRecord rec;
    rec.t = static_cast<double>(i) * dt;
    rec.s = s;

    const ArbDecision arb = solve_arbitrage(pool, s);
    if (arb.has_trade()) {
      pool = apply_swap(pool, arb.trade->cfm_leg);
      rec.arb_traded = true;
      rec.arb_profit = arb.expected_profit;
      ++result.arb_trades;
    }
    rec.pool_price = spot_price(pool);
    rec.pool_value = psi_mark_to_market(pool, s);
    rec.hat_f = hat_f_from_value(rec.pool_value, pool.theta, config.sigma, config.r) * dt;

    if (sample_arrival(config.lambda, dt, draws.u_arrival)) {
      ++result.noise_arrivals;
      const NoiseDecision nd = noise_route(pool, s, draws.raw_size, draws.u_rational, noise_params);
      if (nd.cfm_quote) {
        pool = apply_swap(pool, *nd.cfm_quote);
        ++result.noise_cfm_trades;
      }
      rec.noise = NoiseEvent{nd.venue, nd.side, nd.size};
    }

    rec.fee_income = (pool.fees_collected_1 - fees1_before) + (pool.fees_collected_2 - fees2_before) * s;
    rec.x1 = pool.x1;
    rec.x2 = pool.x2;

    result.fees += rec.fee_income;
    result.bound_fees += rec.hat_f;
    if (keep_steps) result.steps.push_back(rec);
  }
  result.diff = result.bound_fees - result.fees;
  return result;
}

SampleStats sample_stats(const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

AggregateCell aggregate(double gamma, double sigma, double lambda, const std::vector<PathResult>& paths) {
  std::vector<double> diffs;
  diffs.reserve(paths.size());
  double trades = 0.0;
  double fees = 0.0;
  double bound = 0.0;
  for (const PathResult& p : paths) {
    diffs.push_back(p.diff);
    trades += static_cast<double>(p.arb_trades);
    fees += p.fees;
    bound += p.bound_fees;
  }
  const SampleStats st = sample_stats(diffs);
  const double n = paths.empty() ? 1.0 : static_cast<double>(paths.size());
  return {gamma, sigma, lambda, st.mean, st.std, paths.size(), trades / n, fees / n, bound / n};
}

std::vector<AggregateCell> run_sweep(const SweepGrid& grid, const SimConfig& base, unsigned threads) {
  if (grid.gammas.empty()) throw ConfigError("gamma", "sweep grid needs at least one value");
  if (grid.sigmas.empty()) throw ConfigError("sigma", "sweep grid needs at least one value");
  if (grid.lambdas.empty()) throw ConfigError("lambda", "sweep grid needs at least one value");

  std::vector<SimConfig> cells;
  for (double lambda : grid.lambdas) {
    for (double sigma : grid.sigmas) {
      for (double gamma : grid.gammas) {
        SimConfig c = base;
        c.gamma = gamma;
        c.sigma = sigma;
        c.lambda = lambda;
        validate(c);
        cells.push_back(c);
      }
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [](const SimConfig& a, const SimConfig& b) {
    return std::tie(a.lambda, a.sigma, a.gamma) < std::tie(b.lambda, b.sigma, b.gamma);
  });

  const std::size_t n_paths = base.n_paths;
  std::vector<PathResult> results(cells.size() * n_paths);
  parallel_for(results.size(), threads, [&](std::size_t k) {
    results[k] = run_path(cells[k / n_paths], k % n_paths);
  });

  std::vector<AggregateCell> out;
  out.reserve(cells.size());
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const auto first = results.begin() + static_cast<std::ptrdiff_t>(ci * n_paths);
    const std::vector<PathResult> cell_paths(first, first + static_cast<std::ptrdiff_t>(n_paths));
    out.push_back(aggregate(cells[ci].gamma, cells[ci].sigma, cells[ci].lambda, cell_paths));
  }
  return out;
}

HedgeReport verify_hedge(const SimConfig& config, const std::vector<std::uint64_t>& step_counts,
                         FeeStream stream) {
  validate(config);
  const MarketParams market = config.market();
  const ValuationRef ref = valuation_ref(config.initial_pool(), config.s0);

  HedgeReport report;
  for (std::uint64_t n_steps : step_counts) {
    if (n_steps == 0) throw ConfigError("n_steps", "hedge step counts must be positive");
    const double dt = config.horizon / static_cast<double>(n_steps);

    HedgeRow row;
    row.n_steps = n_steps;
    row.terminal_wealth.resize(config.n_paths);
    parallel_for(config.n_paths, 0, [&](std::size_t path) {
      PathRng rng(derive_seed(config.master_seed, kHedgeStreamTag, n_steps), path);
      double s = config.s0;
      double z = 0.0;
      for (std::uint64_t i = 0; i < n_steps; ++i) {
        const double s_next = gbm_step(s, config.sigma, dt, rng.normal());
        const double fee = stream == FeeStream::bound ? hat_f(ref, s, market) * dt : 0.0;
        z = hedged_wealth_step(z, s, s_next, ref, fee, config.r, dt);
        s = s_next;
      }
      row.terminal_wealth[path] = z / ref.psi0;
    });

    std::vector<double> abs_z(row.terminal_wealth.size());
    std::transform(row.terminal_wealth.begin(), row.terminal_wealth.end(), abs_z.begin(),
                   [](double v) { return std::abs(v); });
    std::sort(abs_z.begin(), abs_z.end());
    const std::size_t n = abs_z.size();
    row.median_abs_z = n % 2 == 1 ? abs_z[n / 2] : 0.5 * (abs_z[n / 2 - 1] + abs_z[n / 2]);
    row.fraction_negative =
      static_cast<double>(std::count_if(row.terminal_wealth.begin(), row.terminal_wealth.end(),
                                        [](double v) { return v < 0.0; })) /
      static_cast<double>(n);
    report.rows.push_back(std::move(row));
  }
  return report;
}

} // namespace cfmlab
