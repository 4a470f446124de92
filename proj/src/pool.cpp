#include "cfmlab/pool.hpp"

#include <cmath>
#include <string>

#include "cfmlab/errors.hpp"

namespace cfmlab {

namespace {

struct Legs {
  double in_reserve;
  double out_reserve;
  double in_weight;
  double out_weight;
};

Legs legs_for(const PoolState& pool, Side side) {
  if (side == Side::buy_asset2) {
    return {pool.x1, pool.x2, pool.theta, 1.0 - pool.theta};
  }
  return {pool.x2, pool.x1, 1.0 - pool.theta, pool.theta};
}

// Relative change of the trading function when reserves move from
// (x1, x2) to (y1, y2), computed in log space.
double invariant_drift(double theta, double x1, double x2, double y1, double y2) {
  const double log_ratio = theta * std::log(y1 / x1) + (1.0 - theta) * std::log(y2 / x2);
  return std::abs(std::expm1(log_ratio));
}

} // namespace

std::string_view to_string(Side side) noexcept {
  return side == Side::buy_asset2 ? "buy_asset2" : "buy_asset1";
}

void validate(const PoolState& pool) {
  if (!(pool.x1 > 0.0) || !(pool.x2 > 0.0)) {
    throw DomainError("pool reserves must be positive");
  }
  if (!(pool.theta > 0.0 && pool.theta < 1.0)) {
    throw DomainError("pool weight theta must lie in (0,1)");
  }
  if (!(pool.gamma > 0.0 && pool.gamma <= 1.0)) {
    throw DomainError("fee parameter gamma must lie in (0,1]");
  }
}

double invariant(const PoolState& pool) {
  validate(pool);
  return std::pow(pool.x1, pool.theta) * std::pow(pool.x2, 1.0 - pool.theta);
}

double spot_price(const PoolState& pool) {
  validate(pool);
  return (1.0 - pool.theta) * pool.x1 / (pool.theta * pool.x2);
}

SwapQuote quote_swap(const PoolState& pool, Side side, double amount, QuoteMode mode) {
  validate(pool);
  if (!(amount >= 0.0) || !std::isfinite(amount)) {
    throw DomainError("swap amount must be finite and non-negative");
  }

  SwapQuote quote{side, 0.0, 0.0, 0.0};
  if (amount == 0.0) {
    return quote;
  }

  const Legs l = legs_for(pool, side);
  // in^w_in * out^w_out stays fixed: out'/out = (in/in')^(w_in/w_out).
  if (mode == QuoteMode::exact_in) {
    const double log_growth = std::log1p(amount / l.in_reserve);
    quote.amount_in = amount;
    quote.amount_out = -l.out_reserve * std::expm1(-(l.in_weight / l.out_weight) * log_growth);
  } else {
    if (amount >= kFeasibilityCap * l.out_reserve) {
      throw InfeasibleTrade("requested output " + std::to_string(amount) +
                            " exceeds the feasibility cap of the output reserve " +
                            std::to_string(l.out_reserve));
    }
    const double log_shrink = std::log1p(-amount / l.out_reserve);
    quote.amount_in = l.in_reserve * std::expm1(-(l.out_weight / l.in_weight) * log_shrink);
    quote.amount_out = amount;
  }
  quote.fee = (1.0 - pool.gamma) * quote.amount_in;
  return quote;
}

PoolState apply_swap(const PoolState& pool, const SwapQuote& quote) {
  validate(pool);
  if (!(quote.amount_in >= 0.0) || !(quote.amount_out >= 0.0)) {
    throw ConsistencyError("quote amounts must be non-negative");
  }
  if (quote.fee != (1.0 - pool.gamma) * quote.amount_in) {
    throw ConsistencyError("quote fee does not match this pool's fee parameter");
  }

  PoolState next = pool;
  if (quote.side == Side::buy_asset2) {
    next.x1 += quote.amount_in;
    next.x2 -= quote.amount_out;
    next.fees_collected_1 += quote.fee;
  } else {
    next.x2 += quote.amount_in;
    next.x1 -= quote.amount_out;
    next.fees_collected_2 += quote.fee;
  }
  if (!(next.x1 > 0.0) || !(next.x2 > 0.0)) {
    throw ConsistencyError("quote would exhaust a pool reserve");
  }
  if (invariant_drift(pool.theta, pool.x1, pool.x2, next.x1, next.x2) > kInvariantTolerance) {
    throw ConsistencyError("stale quote: applying it would move the trading-function level");
  }
  return next;
}

} // namespace cfmlab
