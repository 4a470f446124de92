#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cfmlab/engine.hpp"
#include "cfmlab/pool.hpp"

namespace cfmlab::verify {

struct SuiteResult {
  std::string name;
  bool passed{false};
  std::string detail; // measured quantities and the thresholds they were held to
};

using SwapApplier = std::function<PoolState(const PoolState&, const SwapQuote&)>;

// Random swap sequences on random pools: trading-function level held to
// kInvariantTolerance per swap, fees segregated from reserves, exact-in and
// exact-out quotes mutually consistent to 1e-10.
SuiteResult invariant_preservation(std::uint64_t seed, std::size_t n_pools = 200,
                                   std::size_t swaps_per_pool = 50,
                                   const SwapApplier& applier = apply_swap);

// Closed-form and golden-section arbitrage against the brute-force grid
// maximizer: relative profit within 1e-6, identical no-trade decisions.
SuiteResult arbitrage_oracle(std::uint64_t seed, std::size_t n_instances = 1000);

// With gamma = 1 the reserve-marked pool value after arbitrage equals
// psi0 (S_t / S_0)^theta to 1e-8 relative at every step.
SuiteResult closed_form_value_identity(const SimConfig& base, std::size_t n_paths = 20);

// Post-arbitrage pool price: within 1e-9 of S_t when gamma = 1, and inside the
// band [S/(2-gamma), S(2-gamma)] for the given fee level.
SuiteResult price_tracking(const SimConfig& base, double banded_gamma = 0.997, std::size_t n_paths = 20);

// Median |Z_T|/psi0 strictly decreasing over {1e2, 1e3, 1e4} steps and below
// 1% at 1e4; with no fee stream Z_T < 0 on at least 95% of paths.
SuiteResult hedge_convergence(const SimConfig& base, std::size_t n_paths = 100);

// Over 1e4 paths: mean S_T within 3 standard errors of S_0, variance of
// log(S_T/S_0) within 5% of sigma^2 T.
SuiteResult gbm_martingale(const SimConfig& base, std::size_t n_paths = 10'000);

std::vector<SuiteResult> run_all(const SimConfig& base);

} // namespace cfmlab::verify
