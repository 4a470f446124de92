#pragma once

#include "cfmlab/pool.hpp"

namespace cfmlab {

// Reference-market model: one risky asset priced in the numeraire, constant rate.
struct MarketParams {
  double s0{10.0};
  double sigma{0.0};
  double mu{0.0};
  double r{0.0};
};

void validate(const MarketParams& params);

// Anchor of the closed-form pool value psi(s) = psi0 (s / s0)^theta.
struct ValuationRef {
  double psi0{0.0};
  double s0{0.0};
  double theta{0.5};
};

void validate(const ValuationRef& ref);

// Valuation anchored at a pool's current reserves and the price s0.
ValuationRef valuation_ref(const PoolState& pool, double s0);

double psi_closed_form(const ValuationRef& ref, double s);

// Reserves marked at the external price: x1 + s x2.
double psi_mark_to_market(const PoolState& pool, double s);

// Critical fee-income rate for a GMM position worth `psi` at the current price:
//   theta (1-theta) / 2 * sigma^2 * psi - r * theta * psi
// The first term is the convexity cost -1/2 psi'' S^2 sigma^2; the second is
// the financing term -(psi' S) r with psi' S = theta psi.
double hat_f_from_value(double psi, double theta, double sigma, double r);

double hat_f(const ValuationRef& ref, double s, const MarketParams& params);

// Short position in the risky asset that neutralizes the pool's price
// exposure: -d psi / d s = -theta psi(s) / s.
double delta_hedge_ratio(const ValuationRef& ref, double s);

// Advances the wealth of an agent who holds the pool, hedges with
// delta_hedge_ratio evaluated at s_prev, and earns `fee_income` over the step.
double hedged_wealth_step(double z, double s_prev, double s_next, const ValuationRef& ref,
                          double fee_income, double r, double dt);

} // namespace cfmlab
