#include <cmath>
#include <random>

#include "cfmlab/errors.hpp"
#include "cfmlab/pricing.hpp"
#include "doctest.h"

using namespace cfmlab;

namespace {

const ValuationRef kRef{200.0, 10.0, 0.5};

// Central finite differences of the closed-form value, independent of the
// analytic derivatives used by the pricing code.
double dpsi(const ValuationRef& ref, double s) {
  const double h = 1e-5 * s;
  return (psi_closed_form(ref, s + h) - psi_closed_form(ref, s - h)) / (2 * h);
}

double d2psi(const ValuationRef& ref, double s) {
  const double h = 1e-3 * s;
  return (psi_closed_form(ref, s + h) - 2 * psi_closed_form(ref, s) + psi_closed_form(ref, s - h)) / (h * h);
}

} // namespace

TEST_CASE("closed-form pool value") {
  CHECK(psi_closed_form(kRef, 12.1) == doctest::Approx(220.0).epsilon(1e-14));
  CHECK(psi_closed_form(kRef, 10.0) == 200.0);
  CHECK(psi_closed_form(kRef, 40.0) == doctest::Approx(400.0).epsilon(1e-14));
  CHECK(psi_closed_form({123.0, 7.0, 0.3}, 7.0) == 123.0);
  CHECK_THROWS_AS(psi_closed_form(kRef, 0.0), DomainError);
  CHECK_THROWS_AS(psi_closed_form(kRef, -3.0), DomainError);
}

TEST_CASE("mark-to-market pool value") {
  CHECK(psi_mark_to_market({100, 10, 0.5, 1.0}, 10.0) == 200.0);
  CHECK(psi_mark_to_market({110, 100.0 / 11.0, 0.5, 1.0}, 12.1) == doctest::Approx(220.0).epsilon(1e-14));
  CHECK_THROWS_AS(psi_mark_to_market({0, 10, 0.5, 1.0}, 10.0), DomainError);
  CHECK_THROWS_AS(psi_mark_to_market({100, 10, 0.5, 1.0}, 0.0), DomainError);
  CHECK(valuation_ref({100, 10, 0.5, 1.0}, 10.0).psi0 == 200.0);
}

TEST_CASE("critical fee rate") {
  CHECK(hat_f(kRef, 10.0, {10.0, 0.4, 0.0, 0.0}) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(hat_f(kRef, 10.0, {10.0, 0.0, 0.0, 0.0}) == 0.0);
  CHECK(hat_f(kRef, 10.0, {10.0, 0.4, 0.0, 0.02}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(hat_f_from_value(200.0, 0.5, 0.4, 0.0) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("critical fee rate matches the finite-difference convexity cost") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const ValuationRef ref{50 + 500 * u(rng), 1 + 20 * u(rng), 0.05 + 0.9 * u(rng)};
    const double s = ref.s0 * std::exp(u(rng) - 0.5);
    const double sigma = u(rng);
    const double r = 0.05 * u(rng);
    const double expected = -0.5 * d2psi(ref, s) * sigma * sigma * s * s - dpsi(ref, s) * s * r;
    CHECK(hat_f(ref, s, {ref.s0, sigma, 0.0, r}) ==
          doctest::Approx(expected).epsilon(1e-5).scale(ref.psi0 * 1e-3));
  }
}

TEST_CASE("property: critical fee rate is non-negative, linear in value, maximal at theta = 1/2") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double theta = 0.01 + 0.98 * u(rng);
    const ValuationRef ref{1 + 1000 * u(rng), 1 + 100 * u(rng), theta};
    const double s = ref.s0 * std::exp(2 * u(rng) - 1);
    const MarketParams m{ref.s0, 2 * u(rng), 0.0, 0.0};
    const double f = hat_f(ref, s, m);
    CHECK(f >= 0.0);
    const ValuationRef doubled{2 * ref.psi0, ref.s0, ref.theta};
    CHECK(hat_f(doubled, s, m) == doctest::Approx(2 * f).epsilon(1e-14));
    const double psi = psi_closed_form(ref, s);
    CHECK(hat_f_from_value(psi, 0.5, m.sigma, 0.0) >= hat_f_from_value(psi, theta, m.sigma, 0.0));
  }
}

TEST_CASE("delta hedge ratio") {
  CHECK(delta_hedge_ratio(kRef, 12.1) == doctest::Approx(-110.0 / 12.1).epsilon(1e-14));
  CHECK(delta_hedge_ratio(kRef, 10.0) == doctest::Approx(-10.0).epsilon(1e-15));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const ValuationRef ref{1 + 1000 * u(rng), 1 + 100 * u(rng), 0.01 + 0.98 * u(rng)};
    const double s = ref.s0 * std::exp(2 * u(rng) - 1);
    const double delta = delta_hedge_ratio(ref, s);
    CHECK(delta < 0.0);
    CHECK(delta == doctest::Approx(-dpsi(ref, s)).epsilon(1e-7));
  }
}

TEST_CASE("hedged wealth step") {
  CHECK(hedged_wealth_step(0.0, 10.0, 10.0, kRef, hat_f(kRef, 10.0, {10.0, 0.0, 0.0, 0.0}) * 0.001, 0.0,
                           0.001) == 0.0);
  CHECK(hedged_wealth_step(0.0, 10.0, 10.0, kRef, 0.0, 0.0, 0.001) == 0.0);
  CHECK(hedged_wealth_step(0.0, 10.0, 12.1, kRef, 0.0, 0.0, 0.001) == doctest::Approx(-1.0).epsilon(1e-12));
  // Interest accrues on wealth net of the (short) hedge position.
  CHECK(hedged_wealth_step(5.0, 10.0, 10.0, kRef, 0.0, 0.1, 0.5) == doctest::Approx(5.0 + (5.0 + 100.0) * 0.05));
  CHECK(hedged_wealth_step(0.0, 10.0, 10.0, kRef, 0.25, 0.0, 0.01) == 0.25);
  CHECK_THROWS_AS(hedged_wealth_step(0.0, 10.0, 10.0, kRef, 0.0, 0.0, 0.0), DomainError);
}
