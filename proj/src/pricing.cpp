#include "cfmlab/pricing.hpp"

#include <cmath>

#include "cfmlab/errors.hpp"

namespace cfmlab {

namespace {

void require_positive_price(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("price must be positive and finite");
  }
}

} // namespace

void validate(const MarketParams& params) {
  if (!(params.s0 > 0.0)) throw DomainError("s0 must be positive");
  if (!(params.sigma >= 0.0)) throw DomainError("sigma must be non-negative");
  if (!(params.r >= 0.0)) throw DomainError("r must be non-negative");
}

void validate(const ValuationRef& ref) {
  if (!(ref.psi0 > 0.0)) throw DomainError("psi0 must be positive");
  if (!(ref.s0 > 0.0)) throw DomainError("s0 must be positive");
  if (!(ref.theta > 0.0 && ref.theta < 1.0)) throw DomainError("theta must lie in (0,1)");
}

ValuationRef valuation_ref(const PoolState& pool, double s0) {
  return {psi_mark_to_market(pool, s0), s0, pool.theta};
}

double psi_closed_form(const ValuationRef& ref, double s) {
  validate(ref);
  require_positive_price(s);
  return ref.psi0 * std::pow(s / ref.s0, ref.theta);
}

double psi_mark_to_market(const PoolState& pool, double s) {
  validate(pool);
  require_positive_price(s);
  return pool.x1 + s * pool.x2;
}

double hat_f_from_value(double psi, double theta, double sigma, double r) {
  return 0.5 * theta * (1.0 - theta) * sigma * sigma * psi - r * theta * psi;
}

double hat_f(const ValuationRef& ref, double s, const MarketParams& params) {
  return hat_f_from_value(psi_closed_form(ref, s), ref.theta, params.sigma, params.r);
}

double delta_hedge_ratio(const ValuationRef& ref, double s) {
  return -ref.theta * psi_closed_form(ref, s) / s;
}

double hedged_wealth_step(double z, double s_prev, double s_next, const ValuationRef& ref,
                          double fee_income, double r, double dt) {
  require_positive_price(s_prev);
  require_positive_price(s_next);
  if (!(dt > 0.0)) throw DomainError("dt must be positive");

  const double delta = delta_hedge_ratio(ref, s_prev);
  const double pool_gain = psi_closed_form(ref, s_next) - psi_closed_form(ref, s_prev);
  const double hedge_gain = delta * (s_next - s_prev);
  const double interest = (z - delta * s_prev) * r * dt;
  return z + pool_gain + hedge_gain + interest + fee_income;
}

} // namespace cfmlab
