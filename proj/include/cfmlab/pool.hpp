#pragma once
#include <string_view>

namespace cfmlab {

// Asset 1 is the numeraire; asset 2 is the risky asset priced at S.
enum class Side {
  buy_asset2, // deposit asset 1, withdraw asset 2
  buy_asset1, // deposit asset 2, withdraw asset 1
};

enum class QuoteMode { exact_in, exact_out };

std::string_view to_string(Side side) noexcept;

// Geometric mean market with trading function (x1)^theta (x2)^(1-theta).
// Fees are held in separate ledgers and never re-enter the reserves.
struct PoolState {
  double x1{0.0};
  double x2{0.0};
  double theta{0.5};
  double gamma{1.0};
  double fees_collected_1{0.0};
  double fees_collected_2{0.0};
};

struct SwapQuote {
  Side side{Side::buy_asset2};
  double amount_in{0.0};  // deposit, units of the input asset
  double amount_out{0.0}; // withdrawal, units of the output asset
  double fee{0.0};        // (1 - gamma) * amount_in, paid on top of the deposit
};

// Largest fraction of an output reserve a single quote may withdraw.
inline constexpr double kFeasibilityCap = 0.99;

// Relative tolerance on the trading-function level across one swap.
inline constexpr double kInvariantTolerance = 1e-12;

// Throws DomainError unless reserves are positive, theta in (0,1), gamma in (0,1].
void validate(const PoolState& pool);

double invariant(const PoolState& pool);

// Marginal price of asset 2 in units of asset 1: (1-theta) x1 / (theta x2).
double spot_price(const PoolState& pool);

// Total input-asset cost per unit deposited, deposit plus fee: 2 - gamma.
inline double deposit_cost_multiplier(double gamma) noexcept { return 2.0 - gamma; }

// `amount` is the input deposit for exact_in and the output withdrawal for
// exact_out, in units of the respective asset.
SwapQuote quote_swap(const PoolState& pool, Side side, double amount, QuoteMode mode);

PoolState apply_swap(const PoolState& pool, const SwapQuote& quote);

} // namespace cfmlab
