#include <clocale>
#include <cstdlib>

#include "cfmlab/config.hpp"
#include "cfmlab/errors.hpp"
#include "doctest.h"

using namespace cfmlab;

TEST_CASE("parse flat key = value text") {
  const ConfigMap m = parse_config(
    "# comment\n"
    "gamma = 0.96   # trailing comment\n"
    "\n"
    "sigma=[0.2, 0.4 ,0.6]\r\n"
    "lambda = 50");
  CHECK(m.at("gamma") == "0.96");
  CHECK(m.at("sigma") == "[0.2, 0.4 ,0.6]");
  CHECK(m.at("lambda") == "50");
}

TEST_CASE("parse errors name the key") {
  CHECK_THROWS_AS(parse_config("gamma 0.96\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("gam ma = 1\n"), ConfigError);
  try {
    parse_config("sigma = 0.2\nsigma = 0.4\n");
    FAIL("expected duplicate-key error");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "sigma");
  }
}

TEST_CASE("simulate settings") {
  SUBCASE("defaults fill everything but the three scenario keys") {
    const SimulateSettings s = to_simulate_settings(parse_config("gamma = 0.96\nsigma = 0.4\nlambda = 50\n"));
    CHECK(s.config.gamma == 0.96);
    CHECK(s.config.sigma == 0.4);
    CHECK(s.config.lambda == 50.0);
    CHECK(s.config.s0 == 10.0);
    CHECK(s.config.x1_0 == 100.0);
    CHECK(s.config.x2_0 == 10.0);
    CHECK(s.config.n_steps == 1000);
    CHECK(s.config.horizon == 1.0);
    CHECK(s.config.p == 0.9);
    CHECK(s.path_index == 0);
  }
  SUBCASE("missing sigma") {
    try {
      to_simulate_settings(parse_config("gamma = 0.96\nlambda = 50\n"));
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "sigma");
    }
  }
  SUBCASE("unknown key") {
    CHECK_THROWS_AS(to_simulate_settings(parse_config("gamma = 1\nsigma = 0\nlambda = 0\nvol = 2\n")),
                    ConfigError);
  }
  SUBCASE("domain violations") {
    try {
      to_simulate_settings(parse_config("gamma = 1.2\nsigma = 0.4\nlambda = 50\n"));
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "gamma");
    }
    CHECK_THROWS_AS(to_simulate_settings(parse_config("gamma = 1\nsigma = abc\nlambda = 50\n")), ConfigError);
    CHECK_THROWS_AS(to_simulate_settings(parse_config("gamma = 1\nsigma = 0.4\nlambda = 50\nn_steps = 1.5\n")),
                    ConfigError);
    CHECK_THROWS_AS(to_simulate_settings(parse_config("gamma = [1, 0.99]\nsigma = 0.4\nlambda = 50\n")),
                    ConfigError);
  }
  SUBCASE("overrides replace values") {
    ConfigMap m = parse_config("gamma = 0.96\nsigma = 0.4\nlambda = 50\n");
    apply_override(m, "sigma=0.8");
    apply_override(m, "seed = 42");
    const SimulateSettings s = to_simulate_settings(m);
    CHECK(s.config.sigma == 0.8);
    CHECK(s.config.master_seed == 42);
    CHECK_THROWS_AS(apply_override(m, "sigma"), ConfigError);
  }
}

TEST_CASE("sweep settings accept scalars or lists") {
  const SweepSettings s = to_sweep_settings(
    parse_config("gamma = [0.96, 0.98, 1.0]\nsigma = 0.4\nlambda = [50, 100]\nn_paths = 3\n"));
  CHECK(s.grid.gammas == std::vector<double>{0.96, 0.98, 1.0});
  CHECK(s.grid.sigmas == std::vector<double>{0.4});
  CHECK(s.grid.lambdas == std::vector<double>{50, 100});
  CHECK(s.base.n_paths == 3);
  CHECK_THROWS_AS(to_sweep_settings(parse_config("gamma = []\nsigma = 0.4\nlambda = 50\n")), ConfigError);
  CHECK_THROWS_AS(to_sweep_settings(parse_config("gamma = [0.9, 1.1]\nsigma = 0.4\nlambda = 50\n")),
                  ConfigError);
  CHECK_THROWS_AS(to_sweep_settings(parse_config("gamma = [0.9\nsigma = 0.4\nlambda = 50\n")), ConfigError);
}

TEST_CASE("number formatting round-trips and ignores the C locale") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678901234567, -2.5, 0.0}) {
    const std::string text = format_number(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
  CHECK(format_number(0.5) == "0.5");
  const char* previous = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = previous ? previous : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8")) {
    CHECK(format_number(0.5) == "0.5");
  }
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("echoed config reproduces the settings") {
  SimulateSettings s;
  s.config.gamma = 0.965;
  s.config.sigma = 1.0 / 3.0;
  s.config.lambda = 75;
  s.config.master_seed = 18446744073709551615ULL;
  s.path_index = 12;
  const SimulateSettings back = to_simulate_settings(parse_config(echo_config(s)));
  CHECK(back.config.gamma == s.config.gamma);
  CHECK(back.config.sigma == s.config.sigma);
  CHECK(back.config.master_seed == s.config.master_seed);
  CHECK(back.path_index == 12);

  SweepSettings w;
  w.grid = {{0.96, 1.0}, {0.2}, {50, 75, 100}};
  w.base.gamma = 0.96;
  const SweepSettings wback = to_sweep_settings(parse_config(echo_config(w)));
  CHECK(wback.grid.gammas == w.grid.gammas);
  CHECK(wback.grid.lambdas == w.grid.lambdas);
}
