#pragma once
#include <optional>
#include <string_view>

#include "cfmlab/pool.hpp"

namespace cfmlab {

// One arbitrage round trip: a pool leg and an offsetting frictionless leg
// on the reference market.
struct ArbTrade {
  SwapQuote cfm_leg;
  // Asset-2 quantity traded at the reference price: positive when the
  // arbitrageur sells there, negative when it buys there.
  double reference_qty{0.0};
};

struct ArbDecision {
  std::optional<ArbTrade> trade;
  double expected_profit{0.0}; // numeraire, zero iff no trade

  bool has_trade() const noexcept { return trade.has_value(); }
};

// Relative price gap below which the pool is treated as sitting on the
// edge of the no-trade band.
inline constexpr double kBandTolerance = 1e-12;

// Myopic arbitrage against a frictionless reference price `s`. The pool leg
// pays (1 - gamma) of its deposit as fee, so a round trip is profitable only
// outside the band [s / (2 - gamma), s (2 - gamma)]; the optimal trade moves
// the pool's spot price to the nearer band edge.
ArbDecision solve_arbitrage(const PoolState& pool, double s);

// Same problem solved by golden-section search over the deposit amount.
ArbDecision solve_arbitrage_numeric(const PoolState& pool, double s);

// Profit of a pool leg closed out at `s` on the reference market.
double round_trip_profit(const SwapQuote& cfm_leg, double s);

struct NoiseTraderParams {
  double lambda{50.0};
  double p{0.9};
  double size_std{1.0};
};

void validate(const NoiseTraderParams& params);

// Probability of an arrival within a step of length dt: 1 - exp(-lambda dt).
double arrival_probability(double lambda, double dt);

bool sample_arrival(double lambda, double dt, double u);

enum class Venue { cfm, reference };
enum class TradeSide { buy_asset2, sell_asset2 };

std::string_view to_string(Venue venue) noexcept;
std::string_view to_string(TradeSide side) noexcept;

struct NoiseDecision {
  Venue venue{Venue::reference};
  TradeSide side{TradeSide::buy_asset2};
  double size{0.0}; // numeraire spent (buy) or received (sell)
  // Set iff the order executes on the pool.
  std::optional<SwapQuote> cfm_quote;
  // All-in pool execution price for this order, numeraire per unit asset 2;
  // absent when the pool cannot serve the order.
  std::optional<double> cfm_price;
};

// Routes one liquidity-taker order. The sign of `raw_size` picks the side and
// its magnitude times size_std the numeraire size. With probability p
// (u_rational < p) the venue with the better all-in price is chosen, else
// the other one; ties go to the reference market.
NoiseDecision noise_route(const PoolState& pool, double s, double raw_size, double u_rational,
                          const NoiseTraderParams& params);

} // namespace cfmlab
