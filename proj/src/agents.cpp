#include "cfmlab/agents.hpp"

#include <cmath>

#include "cfmlab/errors.hpp"
#include "cfmlab/optimize.hpp"

namespace cfmlab {

namespace {

ArbDecision decision_from_leg(const SwapQuote& leg, double s) {
  const double profit = round_trip_profit(leg, s);
  if (!(profit > 0.0)) {
    return {};
  }
  const double reference_qty =
    leg.side == Side::buy_asset2 ? leg.amount_out : -(leg.amount_in + leg.fee);
  return {ArbTrade{leg, reference_qty}, profit};
}

// Deposit that would withdraw the feasibility cap of the output reserve.
double max_deposit(const PoolState& pool, Side side) {
  const bool in_is_1 = side == Side::buy_asset2;
  const double in_reserve = in_is_1 ? pool.x1 : pool.x2;
  const double w_in = in_is_1 ? pool.theta : 1.0 - pool.theta;
  const double w_out = 1.0 - w_in;
  const double remaining = 1.0 - kFeasibilityCap;
  return in_reserve * std::pow(1.0 / remaining, w_out / w_in) - in_reserve;
}

} // namespace

double round_trip_profit(const SwapQuote& leg, double s) {
  if (leg.side == Side::buy_asset2) {
    // Sell the withdrawn asset 2 at s; the deposit and fee are in numeraire.
    return leg.amount_out * s - leg.amount_in - leg.fee;
  }
  // Buy the deposit and fee in asset 2 at s; the withdrawal is numeraire.
  return leg.amount_out - (leg.amount_in + leg.fee) * s;
}

ArbDecision solve_arbitrage(const PoolState& pool, double s) {
  validate(pool);
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("reference price must be positive");

  const double c = deposit_cost_multiplier(pool.gamma);
  const double spot = spot_price(pool);
  const double lower_edge = s / c;
  const double upper_edge = s * c;

  // Moving the spot to target P keeps x1^theta x2^(1-theta) fixed with
  // x1' = x1 (P / spot)^(1-theta) and x2' = x2 (spot / P)^theta.
  if (spot < lower_edge * (1.0 - kBandTolerance)) {
    const double new_x1 = pool.x1 * std::pow(lower_edge / spot, 1.0 - pool.theta);
    return decision_from_leg(
      quote_swap(pool, Side::buy_asset2, new_x1 - pool.x1, QuoteMode::exact_in), s);
  }
  if (spot > upper_edge * (1.0 + kBandTolerance)) {
    const double new_x2 = pool.x2 * std::pow(spot / upper_edge, pool.theta);
    return decision_from_leg(
      quote_swap(pool, Side::buy_asset1, new_x2 - pool.x2, QuoteMode::exact_in), s);
  }
  return {};
}

ArbDecision solve_arbitrage_numeric(const PoolState& pool, double s) {
  validate(pool);
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("reference price must be positive");

  ArbDecision best;
  for (Side side : {Side::buy_asset2, Side::buy_asset1}) {
    const auto profit = [&](double deposit) {
      return round_trip_profit(quote_swap(pool, side, deposit, QuoteMode::exact_in), s);
    };
    const Maximum m = golden_section_max(profit, 0.0, max_deposit(pool, side));
    if (m.value > best.expected_profit) {
      best = decision_from_leg(quote_swap(pool, side, m.x, QuoteMode::exact_in), s);
    }
  }
  return best;
}

void validate(const NoiseTraderParams& params) {
  if (!(params.lambda >= 0.0)) throw DomainError("lambda must be non-negative");
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw DomainError("p must lie in [0,1]");
  if (!(params.size_std >= 0.0)) throw DomainError("size_std must be non-negative");
}

double arrival_probability(double lambda, double dt) {
  if (dt <= 0.0 || lambda <= 0.0) return 0.0;
  return -std::expm1(-lambda * dt);
}

bool sample_arrival(double lambda, double dt, double u) {
  return u < arrival_probability(lambda, dt);
}

std::string_view to_string(Venue venue) noexcept {
  return venue == Venue::cfm ? "cfm" : "reference";
}

std::string_view to_string(TradeSide side) noexcept {
  return side == TradeSide::buy_asset2 ? "buy" : "sell";
}

NoiseDecision noise_route(const PoolState& pool, double s, double raw_size, double u_rational,
                          const NoiseTraderParams& params) {
  validate(pool);
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("reference price must be positive");

  NoiseDecision d;
  d.side = raw_size > 0.0 ? TradeSide::buy_asset2 : TradeSide::sell_asset2;
  d.size = std::abs(raw_size) * params.size_std;
  if (d.size == 0.0) {
    return d;
  }

  SwapQuote quote;
  bool cfm_better = false;
  try {
    if (d.side == TradeSide::buy_asset2) {
      quote = quote_swap(pool, Side::buy_asset2, d.size, QuoteMode::exact_in);
      if (!(quote.amount_out > 0.0) || quote.amount_out >= kFeasibilityCap * pool.x2) {
        throw InfeasibleTrade("order too large for the pool");
      }
      const double price = (quote.amount_in + quote.fee) / quote.amount_out;
      d.cfm_price = price;
      cfm_better = price < s;
    } else {
      quote = quote_swap(pool, Side::buy_asset1, d.size, QuoteMode::exact_out);
      const double price = quote.amount_out / (quote.amount_in + quote.fee);
      d.cfm_price = price;
      cfm_better = price > s;
    }
  } catch (const InfeasibleTrade&) {
    return d;
  }

  const bool tie = *d.cfm_price == s;
  const bool rational = u_rational < params.p;
  const bool choose_cfm = !tie && (rational == cfm_better);
  if (choose_cfm) {
    d.venue = Venue::cfm;
    d.cfm_quote = quote;
  }
  return d;
}

} // namespace cfmlab
