#include "cfmlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cfmlab/agents.hpp"
#include "cfmlab/oracle.hpp"
#include "cfmlab/pricing.hpp"
#include "cfmlab/random.hpp"

namespace cfmlab::verify {

namespace {

constexpr std::uint64_t kGbmStreamTag = 0x47424dULL;

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

SuiteResult make_result(std::string name, bool passed, const std::ostringstream& detail) {
  return {std::move(name), passed, detail.str()};
}

} // namespace

SuiteResult invariant_preservation(std::uint64_t seed, std::size_t n_pools, std::size_t swaps_per_pool,
                                   const SwapApplier& applier) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double max_drift = 0.0;
  double max_inverse_err = 0.0;
  std::size_t ledger_violations = 0;
  std::size_t rejected = 0;
  std::size_t swaps = 0;

  for (std::size_t k = 0; k < n_pools; ++k) {
    PoolState pool{log_uniform(rng, 0.1, 1e4), log_uniform(rng, 0.1, 1e4), 0.05 + 0.9 * unit(rng),
                   0.9 + 0.099 * unit(rng), 0.0, 0.0};
    for (std::size_t j = 0; j < swaps_per_pool; ++j) {
      const Side side = unit(rng) < 0.5 ? Side::buy_asset2 : Side::buy_asset1;
      const double in_reserve = side == Side::buy_asset2 ? pool.x1 : pool.x2;
      const double out_reserve = side == Side::buy_asset2 ? pool.x2 : pool.x1;

      // Exact-out followed by the matching exact-in must agree.
      const double want_out = 0.5 * unit(rng) * out_reserve;
      const SwapQuote by_out = quote_swap(pool, side, want_out, QuoteMode::exact_out);
      const SwapQuote by_in = quote_swap(pool, side, by_out.amount_in, QuoteMode::exact_in);
      if (want_out > 0.0) max_inverse_err = std::max(max_inverse_err, rel_diff(by_in.amount_out, want_out));

      const SwapQuote quote = unit(rng) < 0.5
        ? by_out
        : quote_swap(pool, side, unit(rng) * in_reserve, QuoteMode::exact_in);

      PoolState next;
      try {
        next = applier(pool, quote);
      } catch (const std::exception&) {
        ++rejected;
        continue;
      }
      ++swaps;
      max_drift = std::max(max_drift, rel_diff(invariant(next), invariant(pool)));

      const bool in1 = side == Side::buy_asset2;
      const bool reserves_ok = in1
        ? next.x1 == pool.x1 + quote.amount_in && next.x2 == pool.x2 - quote.amount_out
        : next.x2 == pool.x2 + quote.amount_in && next.x1 == pool.x1 - quote.amount_out;
      const bool fee_ok = quote.fee == (1.0 - pool.gamma) * quote.amount_in &&
        (in1 ? next.fees_collected_1 == pool.fees_collected_1 + quote.fee &&
                 next.fees_collected_2 == pool.fees_collected_2
             : next.fees_collected_2 == pool.fees_collected_2 + quote.fee &&
                 next.fees_collected_1 == pool.fees_collected_1);
      if (!reserves_ok || !fee_ok) ++ledger_violations;
      pool = next;
    }
  }

  const double drift_limit = kInvariantTolerance;
  const bool passed = max_drift <= drift_limit && max_inverse_err <= 1e-10 && ledger_violations == 0 &&
    rejected == 0 && swaps > 0;
  std::ostringstream d;
  d << "swaps=" << swaps << " max_invariant_drift=" << max_drift << " (limit " << drift_limit << ")"
    << " max_inverse_error=" << max_inverse_err << " (limit 1e-10)"
    << " ledger_violations=" << ledger_violations << " rejected=" << rejected;
  return make_result("invariant-preservation", passed, d);
}

SuiteResult arbitrage_oracle(std::uint64_t seed, std::size_t n_instances) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double max_err_closed = 0.0;
  double max_err_numeric = 0.0;
  std::size_t decision_mismatches = 0;
  std::size_t trades = 0;

  for (std::size_t k = 0; k < n_instances; ++k) {
    PoolState pool{log_uniform(rng, 1.0, 1000.0), log_uniform(rng, 1.0, 1000.0), 0.1 + 0.8 * unit(rng),
                   1.0, 0.0, 0.0};
    if (unit(rng) >= 0.1) pool.gamma = 0.95 + 0.05 * unit(rng);
    const double s = spot_price(pool) * std::exp(unit(rng) - 0.5);

    const ArbDecision closed = solve_arbitrage(pool, s);
    const ArbDecision numeric = solve_arbitrage_numeric(pool, s);
    const oracle::GridArbitrage grid = oracle::grid_arbitrage(pool.x1, pool.x2, pool.theta, pool.gamma, s);

    if (closed.has_trade() != grid.trade || numeric.has_trade() != grid.trade) {
      ++decision_mismatches;
      continue;
    }
    if (!grid.trade) continue;
    ++trades;
    const bool same_side = (closed.trade->cfm_leg.side == Side::buy_asset2) == grid.buys_asset2;
    if (!same_side) ++decision_mismatches;
    max_err_closed = std::max(max_err_closed, rel_diff(closed.expected_profit, grid.profit));
    max_err_numeric = std::max(max_err_numeric, rel_diff(numeric.expected_profit, grid.profit));
  }

  const bool passed = decision_mismatches == 0 && max_err_closed <= 1e-6 && max_err_numeric <= 1e-6;
  std::ostringstream d;
  d << "instances=" << n_instances << " trades=" << trades << " decision_mismatches=" << decision_mismatches
    << " max_rel_profit_error closed_form=" << max_err_closed << " golden_section=" << max_err_numeric
    << " (limit 1e-6)";
  return make_result("arbitrage-oracle", passed, d);
}

SuiteResult closed_form_value_identity(const SimConfig& base, std::size_t n_paths) {
  SimConfig config = base;
  config.gamma = 1.0;
  const ValuationRef ref = valuation_ref(config.initial_pool(), config.s0);

  double max_err = 0.0;
  std::size_t steps = 0;
  for (std::size_t path = 0; path < n_paths; ++path) {
    const PathResult result = run_path(config, path, true);
    for (const StepRecord& rec : result.steps) {
      max_err = std::max(max_err, rel_diff(rec.pool_value, psi_closed_form(ref, rec.s)));
      ++steps;
    }
  }
  std::ostringstream d;
  d << "paths=" << n_paths << " steps=" << steps << " max_rel_error=" << max_err << " (limit 1e-8)";
  return make_result("closed-form-value-identity", max_err <= 1e-8, d);
}

SuiteResult price_tracking(const SimConfig& base, double banded_gamma, std::size_t n_paths) {
  SimConfig exact = base;
  exact.gamma = 1.0;
  SimConfig banded = base;
  banded.gamma = banded_gamma;
  const double c = deposit_cost_multiplier(banded_gamma);

  double max_gap = 0.0;
  std::size_t band_violations = 0;
  for (std::size_t path = 0; path < n_paths; ++path) {
    for (const StepRecord& rec : run_path(exact, path, true).steps) {
      max_gap = std::max(max_gap, std::abs(rec.pool_price - rec.s) / rec.s);
    }
    for (const StepRecord& rec : run_path(banded, path, true).steps) {
      const double lo = rec.s / c * (1.0 - 1e-12);
      const double hi = rec.s * c * (1.0 + 1e-12);
      if (rec.pool_price < lo || rec.pool_price > hi) ++band_violations;
    }
  }
  std::ostringstream d;
  d << "gamma=1 max_rel_gap=" << max_gap << " (limit 1e-9); gamma=" << banded_gamma
    << " band=[S/" << c << ", S*" << c << "] violations=" << band_violations;
  return make_result("price-tracking", max_gap <= 1e-9 && band_violations == 0, d);
}

SuiteResult hedge_convergence(const SimConfig& base, std::size_t n_paths) {
  SimConfig config = base;
  config.n_paths = n_paths;
  config.r = 0.0;
  const std::vector<std::uint64_t> counts{100, 1000, 10000};
  const HedgeReport bound = verify_hedge(config, counts, FeeStream::bound);
  const HedgeReport zero = verify_hedge(config, {config.n_steps}, FeeStream::zero);

  bool decreasing = true;
  std::ostringstream d;
  d << "median |Z_T|/psi0:";
  for (std::size_t i = 0; i < bound.rows.size(); ++i) {
    d << " n=" << bound.rows[i].n_steps << ":" << bound.rows[i].median_abs_z;
    if (i > 0 && !(bound.rows[i].median_abs_z < bound.rows[i - 1].median_abs_z)) decreasing = false;
  }
  const double final_median = bound.rows.back().median_abs_z;
  const double negative = zero.rows.front().fraction_negative;
  d << " (strictly decreasing, final < 0.01); zero-fee fraction Z_T<0=" << negative << " (limit >= 0.95)";
  return make_result("hedge-convergence", decreasing && final_median < 0.01 && negative >= 0.95, d);
}

SuiteResult gbm_martingale(const SimConfig& base, std::size_t n_paths) {
  const double dt = base.dt();
  std::vector<double> terminal(n_paths);
  std::vector<double> log_returns(n_paths);
  parallel_for(n_paths, 0, [&](std::size_t path) {
    PathRng rng(derive_seed(base.master_seed, kGbmStreamTag), path);
    double s = base.s0;
    for (std::uint64_t i = 0; i < base.n_steps; ++i) s = gbm_step(s, base.sigma, dt, rng.normal());
    terminal[path] = s;
    log_returns[path] = std::log(s / base.s0);
  });

  const SampleStats st = sample_stats(terminal);
  const SampleStats lr = sample_stats(log_returns);
  const double se = st.std / std::sqrt(static_cast<double>(n_paths));
  const double z_score = se > 0.0 ? std::abs(st.mean - base.s0) / se : 0.0;
  const double target_var = base.sigma * base.sigma * base.horizon;
  const double var = lr.std * lr.std;
  const double var_err = target_var > 0.0 ? std::abs(var - target_var) / target_var : std::abs(var);

  const bool mean_ok = se > 0.0 ? z_score <= 3.0 : st.mean == base.s0;
  const bool var_ok = target_var > 0.0 ? var_err <= 0.05 : var == 0.0;
  std::ostringstream d;
  d << "paths=" << n_paths << " mean_S_T=" << st.mean << " S_0=" << base.s0 << " standard_errors=" << z_score
    << " (limit 3); var_log_return=" << var << " sigma^2 T=" << target_var << " rel_error=" << var_err
    << " (limit 0.05)";
  return make_result("gbm-martingale", mean_ok && var_ok, d);
}

std::vector<SuiteResult> run_all(const SimConfig& base) {
  return {
    invariant_preservation(base.master_seed),
    arbitrage_oracle(base.master_seed),
    closed_form_value_identity(base),
    price_tracking(base),
    hedge_convergence(base),
    gbm_martingale(base),
  };
}

} // namespace cfmlab::verify
