#include "cfmlab/oracle.hpp"

#include <cmath>

namespace cfmlab::oracle {

namespace {

using real = long double;

struct Direction {
  real in_reserve;
  real out_reserve;
  real in_weight;
  real out_weight;
  real gamma;
  real s;
  bool deposit_numeraire;

  // Pool leg from the trading function: out' = exp((log k - w_in log in') / w_out).
  real profit(real deposit) const {
    const real log_k = in_weight * std::log(in_reserve) + out_weight * std::log(out_reserve);
    const real new_out = std::exp((log_k - in_weight * std::log(in_reserve + deposit)) / out_weight);
    const real received = out_reserve - new_out;
    const real paid = deposit + (1.0L - gamma) * deposit;
    return deposit_numeraire ? received * s - paid : received - paid * s;
  }
};

struct Best {
  real x{0.0L};
  real value{0.0L};
};

Best scan(const Direction& d, real lo, real hi, std::size_t points) {
  Best best;
  const real step = (hi - lo) / static_cast<real>(points);
  for (std::size_t i = 1; i <= points; ++i) {
    const real x = lo + step * static_cast<real>(i);
    const real v = d.profit(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

Best search(const Direction& d, std::size_t resolution) {
  real hi = d.in_reserve * 1e-9L;
  if (!(d.profit(hi) > 0.0L)) return {};
  for (int i = 0; i < 200 && d.profit(hi) > 0.0L; ++i) hi *= 2.0L;

  const std::size_t coarse = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(resolution))));
  const real cell = hi / static_cast<real>(coarse);
  const Best rough = scan(d, 0.0L, hi, coarse);
  const real lo = rough.x - cell > 0.0L ? rough.x - cell : 0.0L;
  Best fine = scan(d, lo, rough.x + cell, 2 * coarse);
  if (rough.value > fine.value) fine = rough;
  return fine;
}

} // namespace

GridArbitrage grid_arbitrage(double x1, double x2, double theta, double gamma, double s,
                             std::size_t resolution) {
  const Direction buy2{x1, x2, theta, 1.0L - theta, gamma, s, true};
  const Direction buy1{x2, x1, 1.0L - theta, theta, gamma, s, false};

  const Best a = search(buy2, resolution);
  const Best b = search(buy1, resolution);

  GridArbitrage out;
  const Best& win = a.value >= b.value ? a : b;
  if (win.value > 0.0L) {
    out.trade = true;
    out.buys_asset2 = &win == &a;
    out.deposit = static_cast<double>(win.x);
    out.profit = static_cast<double>(win.value);
  }
  return out;
}

} // namespace cfmlab::oracle
