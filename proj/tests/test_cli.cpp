#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "fracns/error.hpp"
#include "fracns/regularity.hpp"
#include "fracns/snapshot.hpp"
#include "run.hpp"

using namespace fracns;
using namespace fracns::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::absolute("cli_test_out");

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fracns");
  args.push_back("--quiet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string l;
  while (std::getline(ss, l)) out.push_back(l);
  return out;
}

fs::path fresh(const std::string& name) {
  const fs::path p = kRoot / name;
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config text parsing") {
  const auto e = parse_config_text("# sweep\nsolver.alpha = 1.8  # comment\n\ngrid.n=64\n", "inline");
  CHECK(e.at("solver.alpha") == "1.8");
  CHECK(e.at("grid.n") == "64");
  CHECK_THROWS_AS(parse_config_text("solver.alhpa = 1\n", "inline"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("solver.alpha\n", "inline"), ConfigError);

  Entries over = e;
  apply_override(over, "solver.alpha=1.2");
  CHECK(over.at("solver.alpha") == "1.2");
  CHECK_THROWS_AS(apply_override(over, "nokey"), ConfigError);
  CHECK_THROWS_AS(apply_override(over, "bogus.key=1"), ConfigError);
}

TEST_CASE("typed config and field-precise errors") {
  const auto c = build_config(Command::solve, {{"solver.schedule", "0.1:2.5, 0.05:2.5, 0.05:3"}, {"solver.R", "inf"}});
  REQUIRE(c.solver.schedule.size() == 3);
  CHECK(c.solver.schedule[2].R == 3.0);
  CHECK(std::isinf(c.solver.R));

  auto message = [](const Entries& e) {
    try {
      build_config(Command::solve, e);
    } catch (const ConfigError& err) {
      return std::string(err.what());
    }
    return std::string();
  };
  CHECK(message({{"solver.alpha", "2.5"}}).find("solver.alpha") != std::string::npos);
  CHECK(message({{"solver.epsilon", "abc"}}).find("solver.epsilon") != std::string::npos);
  CHECK(message({{"grid.n", "48"}}).find("grid.n") != std::string::npos);
  CHECK(message({{"solver.schedule", "0.05:2, 0.1:2"}}).find("solver.schedule[1]") != std::string::npos);
  CHECK(message({{"forcing.kind", "vortex"}}).find("forcing.kind") != std::string::npos);
  CHECK(message({{"checks.band_hi", "20"}}).find("checks.band") != std::string::npos);
  CHECK(message({{"bootstrap.mode", "fast"}}).find("bootstrap.mode") != std::string::npos);
  CHECK_THROWS_AS(parse_command("simulate"), ConfigError);
}

TEST_CASE("auto bootstrap mode follows alpha") {
  CHECK(build_config(Command::bootstrap, {}).bootstrap_mode == BootstrapMode::bounded_hypothesis);
  CHECK(build_config(Command::bootstrap, {{"solver.alpha", "1.8"}}).bootstrap_mode == BootstrapMode::subcritical);
  const auto out = fresh("bootstrap_default");
  REQUIRE(invoke({"bootstrap", "--output", out.string()}) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(out / "bootstrap.json"));
  CHECK(j["mode"] == "bounded_hypothesis");
  CHECK(j["tail_fit"].is_null());
}

TEST_CASE("unknown command and bad flags exit 1") {
  CHECK(invoke({"simulate"}) == kExitConfig);
  CHECK(invoke({"solve", "--set", "solver.alpha=3", "--output", fresh("bad_alpha").string()}) == kExitConfig);
  CHECK_FALSE(fs::exists(kRoot / "bad_alpha"));
}

TEST_CASE("unwritable output fails before computing") {
  fs::create_directories(kRoot);
  const fs::path blocker = kRoot / "plain_file";
  std::ofstream(blocker) << "x";
  CHECK(invoke({"solve", "--output", (blocker / "sub").string()}) == kExitConfig);
}

TEST_CASE("solve with zero forcing writes the zero solution") {
  const auto out = fresh("zero");
  REQUIRE(invoke({"solve", "--set", "forcing.amplitude=0", "--output", out.string()}) == kExitOk);
  const auto u = read_spectral(out / "velocity.fns");
  CHECK(u.max_abs_coefficient() == 0.0);
  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(summary["status"] == "ok");
  CHECK(summary["results"]["status"] == "converged");
  CHECK(summary["config"]["forcing.amplitude"] == "0");
  CHECK(summary["wall_time_seconds"].get<double>() >= 0.0);
  CHECK(summary["versions"]["fracns"] == "0.1.0");
}

TEST_CASE("config echo round-trips") {
  const auto out = fresh("echo");
  const fs::path cfg = kRoot / "echo.cfg";
  std::ofstream(cfg) << "solver.alpha = 1.8\nforcing.norm_target = 0.05\nsolver.R = 2.8\n";
  REQUIRE(invoke({"solve", "--config", cfg.string(), "--set", "solver.alpha=1.2", "--seed", "9", "--output",
                  out.string()}) == kExitOk);
  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  Entries echo;
  for (auto it = summary["config"].begin(); it != summary["config"].end(); ++it) echo[it.key()] = it.value();
  CHECK(echo.at("solver.alpha") == "1.2");
  CHECK(echo.at("seed") == "9");
  const auto again = build_config(Command::solve, echo);
  CHECK(again.entries == echo);
  CHECK(again.solver.alpha == 1.2);
  CHECK(again.solver.R == 2.8);
  CHECK(again.forcing.norm_target == 0.05);
  CHECK(again.seed == 9);
  CHECK(again.output_dir == out);
}

TEST_CASE("divergent solve exits 2 with a report") {
  const auto out = fresh("diverge");
  const int code = invoke({"solve", "--set", "forcing.kind=taylor_green_like", "--set", "forcing.amplitude=50", "--set",
                           "solver.max_iter=20", "--set", "solver.epsilon=0.01", "--output", out.string()});
  CHECK(code == kExitDiverged);
  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(summary["exit_code"] == 2);
  CHECK(summary["status"] != "ok");
  CHECK(fs::exists(out / "ledger.csv"));
}

TEST_CASE("stored solution feeds verify-energy, norms, bootstrap and liouville-scan") {
  const auto solved = fresh("stored");
  const std::vector<std::string> common = {"--set", "forcing.norm_target=0.05", "--set", "solver.R=2.8",
                                           "--set", "solver.alpha=1.8"};
  auto with = [&](std::vector<std::string> args) {
    args.insert(args.end(), common.begin(), common.end());
    return invoke(args);
  };
  REQUIRE(with({"solve", "--output", solved.string()}) == kExitOk);
  const fs::path u = solved / "velocity.fns", p = solved / "pressure.fns";
  const std::string u_bytes = slurp(u);

  const auto ve = fresh("verify");
  REQUIRE(with({"verify-energy", "--set", "input.velocity=" + u.string(), "--output", ve.string()}) == kExitOk);
  const auto energy = lines(slurp(ve / "energy.csv"));
  REQUIRE(energy.size() == 4);
  CHECK(energy[0] == "check,lhs,rhs,slack,relative_slack,holds\r");
  for (std::size_t i = 1; i < 4; ++i) CHECK(energy[i].find(",true") != std::string::npos);

  const auto nm = fresh("norms");
  REQUIRE(with({"norms", "--set", "input.velocity=" + u.string(), "--output", nm.string()}) == kExitOk);
  CHECK(lines(slurp(nm / "norms.csv")).size() == 8);

  const auto bs = fresh("bootstrap");
  REQUIRE(with({"bootstrap", "--set", "input.velocity=" + u.string(), "--output", bs.string()}) == kExitOk);
  const auto bj = nlohmann::json::parse(slurp(bs / "bootstrap.json"));
  CHECK(bj["mode"] == "subcritical");
  CHECK(bj["sigma_sequence"][0].get<double>() == doctest::Approx(1.1));
  CHECK(bj["tail_fit"]["verdict"] == "finite");

  const auto ls = fresh("liouville");
  REQUIRE(with({"liouville-scan", "--set", "input.velocity=" + u.string(), "--set", "input.pressure=" + p.string(),
                "--set", "liouville.radii=0.5,0.6,0.8,1.0,1.3,1.7,2.2,2.9", "--output", ls.string()}) == kExitOk);
  const auto rows = lines(slurp(ls / "liouville.csv"));
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == "R,I_a,I_b,I_c,truncated_energy\r");
  const auto lj = nlohmann::json::parse(slurp(ls / "liouville.json"));
  CHECK(lj.contains("slopes"));
  CHECK(lj.contains("predicted"));
  CHECK(lj["regime_flags"].contains("condition_9"));

  CHECK(slurp(u) == u_bytes);
}

TEST_CASE("missing input is a config error") {
  CHECK(invoke({"norms", "--output", fresh("noinput").string()}) == kExitConfig);
  CHECK(invoke({"norms", "--set", "input.velocity=does/not/exist.fns", "--output", fresh("noinput").string()}) ==
        kExitConfig);
}

TEST_CASE("seeded runs are byte-identical") {
  const auto a = fresh("det_a"), b = fresh("det_b"), c = fresh("det_c");
  const std::vector<std::string> args = {"check-lemmas", "--set", "checks.trials=5", "--seed", "11"};
  auto run_into = [&](const fs::path& out, const std::string& seed) {
    auto v = args;
    v[4] = seed;
    v.push_back("--output");
    v.push_back(out.string());
    return invoke(v);
  };
  REQUIRE(run_into(a, "11") == kExitOk);
  REQUIRE(run_into(b, "11") == kExitOk);
  REQUIRE(run_into(c, "12") == kExitOk);
  CHECK(slurp(a / "checkers.csv") == slurp(b / "checkers.csv"));
  CHECK(slurp(a / "checkers.csv") != slurp(c / "checkers.csv"));
  CHECK(lines(slurp(a / "checkers.csv")).size() == 16);
}
