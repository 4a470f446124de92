#pragma once
#include <cstddef>

namespace cfmlab::oracle {

// Brute-force arbitrage maximizer. It shares no code with the pool or the
// arbitrage solver: the pool leg is recomputed from the trading function in
// extended precision and the deposit is searched on a grid.
struct GridArbitrage {
  bool trade{false};
  bool buys_asset2{false}; // deposit asset 1, sell the asset 2 received
  double deposit{0.0};
  double profit{0.0};
};

// Searches deposits in (0, hi] for each direction, where hi is found by
// doubling until the round trip loses money. The search is a two-level grid
// (coarse pass, then a fine pass around the coarse winner) whose combined
// resolution is `resolution` points over the bracket.
GridArbitrage grid_arbitrage(double x1, double x2, double theta, double gamma, double s,
                             std::size_t resolution = 1'000'000);

} // namespace cfmlab::oracle
