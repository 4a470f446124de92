#include <filesystem>
#include <fstream>
#include <sstream>

#include "cfmlab/commands.hpp"
#include "cfmlab/verify.hpp"
#include "doctest.h"

using namespace cfmlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cfmlab_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path path = dir / "input.cfg";
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

void check_csv_hygiene(const std::string& csv) {
  REQUIRE_FALSE(csv.empty());
  CHECK(csv.back() == '\n');
  for (const std::string& line : lines(csv)) {
    CHECK_FALSE(line.empty());
    CHECK(line.back() != ' ');
    CHECK(line.find('\r') == std::string::npos);
  }
}

const char* kScenario = "gamma = 0.96\nsigma = 0.4\nlambda = 50\nn_steps = 200\nseed = 5\n";

} // namespace

TEST_CASE("simulate writes steps.csv and a manifest that reproduces it") {
  const fs::path dir = scratch("simulate");
  std::ostringstream log;
  CommandOptions opt;
  opt.config = write_config(dir, kScenario);
  opt.out = dir / "run1";
  REQUIRE(cmd_simulate(opt, log) == kExitOk);

  const std::string csv = slurp(opt.out / "steps.csv");
  check_csv_hygiene(csv);
  const auto rows = lines(csv);
  CHECK(rows.front() == kStepsHeader);
  CHECK(rows.size() == 201);
  REQUIRE(fs::exists(opt.out / "manifest.cfg"));

  CommandOptions again;
  again.config = opt.out / "manifest.cfg";
  again.out = dir / "run2";
  REQUIRE(cmd_simulate(again, log) == kExitOk);
  CHECK(slurp(again.out / "steps.csv") == csv);
}

TEST_CASE("simulate applies overrides and dedicated flags") {
  const fs::path dir = scratch("overrides");
  std::ostringstream log;
  CommandOptions base;
  base.config = write_config(dir, kScenario);
  base.out = dir / "a";
  REQUIRE(cmd_simulate(base, log) == kExitOk);

  CommandOptions seeded = base;
  seeded.out = dir / "b";
  seeded.seed = 6;
  REQUIRE(cmd_simulate(seeded, log) == kExitOk);
  CHECK(slurp(seeded.out / "steps.csv") != slurp(base.out / "steps.csv"));

  CommandOptions overridden = base;
  overridden.out = dir / "c";
  overridden.overrides = {"n_steps=50"};
  REQUIRE(cmd_simulate(overridden, log) == kExitOk);
  CHECK(lines(slurp(overridden.out / "steps.csv")).size() == 51);
}

TEST_CASE("simulate config errors exit 2 and write nothing") {
  const fs::path dir = scratch("bad_config");
  std::ostringstream log;
  CommandOptions opt;
  opt.config = write_config(dir, "gamma = 0.96\nlambda = 50\n");
  opt.out = dir / "out";
  CHECK(cmd_simulate(opt, log) == kExitConfigError);
  CHECK(log.str().find("sigma") != std::string::npos);
  CHECK_FALSE(fs::exists(opt.out / "steps.csv"));

  opt.config = write_config(dir, kScenario);
  opt.overrides = {"theta=2"};
  CHECK(cmd_simulate(opt, log) == kExitConfigError);
}

TEST_CASE("I/O failures exit 3") {
  const fs::path dir = scratch("io");
  std::ostringstream log;
  CommandOptions opt;
  opt.config = dir / "missing.cfg";
  opt.out = dir / "out";
  CHECK(cmd_simulate(opt, log) == kExitIoError);

  opt.config = write_config(dir, kScenario);
  std::ofstream(dir / "blocker") << "x";
  opt.out = dir / "blocker" / "sub";
  CHECK(cmd_simulate(opt, log) == kExitIoError);
}

TEST_CASE("sweep writes one sorted row per cell") {
  const fs::path dir = scratch("sweep");
  std::ostringstream log;
  CommandOptions opt;
  opt.config = write_config(dir, "gamma = [1.0, 0.96]\nsigma = [0.4, 0.2]\nlambda = 50\nn_steps = 100\n");
  opt.out = dir / "out";
  opt.paths = 1;
  REQUIRE(cmd_sweep(opt, log) == kExitOk);

  const std::string csv = slurp(opt.out / "sweep.csv");
  check_csv_hygiene(csv);
  const auto rows = lines(csv);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == kSweepHeader);
  CHECK(rows[1].rfind("0.95999999999999996,0.20000000000000001,50,", 0) == 0);
  CHECK(rows[4].rfind("1,0.40000000000000002,50,", 0) == 0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].find(",0,1") == rows[i].size() - 4); // std_diff 0, n_paths 1
  }

  CommandOptions single = opt;
  single.config = write_config(dir, "gamma = 0.99\nsigma = 0.4\nlambda = 50\nn_steps = 100\n");
  single.out = dir / "single";
  REQUIRE(cmd_sweep(single, log) == kExitOk);
  CHECK(lines(slurp(single.out / "sweep.csv")).size() == 2);

  CommandOptions replay;
  replay.config = opt.out / "manifest.cfg";
  replay.out = dir / "replay";
  REQUIRE(cmd_sweep(replay, log) == kExitOk);
  CHECK(slurp(replay.out / "sweep.csv") == csv);
}

TEST_CASE("invariant suite passes and catches fees leaking into reserves") {
  CHECK(verify::invariant_preservation(1).passed);

  const verify::SwapApplier leaky = [](const PoolState& pool, const SwapQuote& q) {
    PoolState next = pool;
    if (q.side == Side::buy_asset2) {
      next.x1 += q.amount_in + q.fee;
      next.x2 -= q.amount_out;
      next.fees_collected_1 += q.fee;
    } else {
      next.x2 += q.amount_in + q.fee;
      next.x1 -= q.amount_out;
      next.fees_collected_2 += q.fee;
    }
    return next;
  };
  const verify::SuiteResult mutated = verify::invariant_preservation(1, 200, 50, leaky);
  CHECK_FALSE(mutated.passed);
  MESSAGE(mutated.detail);
}

TEST_CASE("arbitrage oracle suite on a small sample") {
  const verify::SuiteResult r = verify::arbitrage_oracle(2, 100);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("CSV formatting of records") {
  StepRecord rec;
  rec.t = 0.001;
  rec.s = 10.0;
  rec.pool_price = 10.0;
  rec.x1 = 100.0;
  rec.x2 = 10.0;
  CHECK(steps_csv({rec}) == std::string(kStepsHeader) + "\n0.001,10,10,100,10,0,0,0,none,none,0\n");
  rec.noise = NoiseEvent{Venue::cfm, TradeSide::sell_asset2, 0.5};
  CHECK(lines(steps_csv({rec}))[1] == "0.001,10,10,100,10,0,0,0,cfm,sell,0.5");
}
