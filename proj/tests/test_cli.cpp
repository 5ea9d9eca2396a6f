#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "optpot/grid.hpp"
#include "optpot/io.hpp"

using namespace optpot;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kWork = fs::temp_directory_path() / "optpot_cli_test";

int run(const std::string& args, const std::string& capture = "") {
  std::string cmd = std::string(OPTPOT_CLI) + " " + args;
  cmd += capture.empty() ? " > /dev/null 2>&1" : " > " + (kWork / capture).string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config(const std::string& name) { return (fs::path(OPTPOT_CONFIG_DIR) / name).string(); }

std::string write_config(const std::string& name, const std::string& body) {
  const fs::path p = kWork / name;
  write_text(p, body);
  return p.string();
}

}  // namespace

TEST_CASE("setup") {
  fs::remove_all(kWork);
  fs::create_directories(kWork);
}

TEST_CASE("state command") {
  const fs::path out = kWork / "state";
  REQUIRE(run("state --config " + config("poisson_radial.json") + " --out " + out.string()) == 0);
  const json report = json::parse(read_text(out / "report.json"));
  CHECK(std::abs(report["u_center"].get<double>() - 0.25) <= 1e-3);
  const Field u = read_field_csv(build_radial(1001), out / "u.csv");
  CHECK(std::abs(u[0] - 0.25) <= 1e-3);
  CHECK(fs::exists(out / "m.csv"));
}

TEST_CASE("oracle command") {
  REQUIRE(run("oracle1 --s0 0.1", "oracle.json") == 0);
  const json j = json::parse(read_text(kWork / "oracle.json"));
  CHECK(std::abs(j["a"].get<double>() - 0.2825) <= 5e-4);
  CHECK(j["ring_weight"].get<double>() > 0.0);
  CHECK(j.contains("total_mass"));
  CHECK(run("oracle1 --s0 0.3") == 1);
}

TEST_CASE("third example reaches the reference norm for k = 0.001") {
  const fs::path out = kWork / "third";
  REQUIRE(run("optimize --config " + config("third_k0.001.json") + " --out " + out.string()) == 0);
  const json report = json::parse(read_text(out / "report.json"));
  CHECK(report["l1_m"].get<double>() == doctest::Approx(0.874948).epsilon(0.10));
  for (const char* name : {"m.csv", "u.csv", "z.csv", "m.pgm", "u.pgm", "z.pgm"}) CHECK(fs::exists(out / name));
  CHECK(report["pgm"]["m"]["max"].get<double>() == 1.0);
  const auto history = report["cost_history"].get<std::vector<double>>();
  for (std::size_t i = 1; i < history.size(); ++i) CHECK(history[i] < history[i - 1]);
}

TEST_CASE("semilinear command") {
  const fs::path out = kWork / "semi";
  REQUIRE(run("semilinear --config " + config("auxiliary_power.json") + " --out " + out.string()) == 0);
  const json report = json::parse(read_text(out / "report.json"));
  CHECK(report["selection_violation"].get<double>() <= 1e-8);
  for (const char* name : {"u.csv", "w.csv", "m.csv"}) CHECK(fs::exists(out / name));
}

TEST_CASE("suite command") {
  REQUIRE(run("suite --seed 42 --trials 4", "suite.json") == 0);
  const json j = json::parse(read_text(kWork / "suite.json"));
  CHECK(j["all_ok"].get<bool>());
}

TEST_CASE("exit codes") {
  const std::string bad = write_config("bad.json", R"({"grid": {"kind": "disc", "n": 33, "typo": 1}})");
  CHECK(run("optimize --config " + bad) == 1);
  CHECK(run("optimize --config " + (kWork / "missing.json").string()) == 1);
  CHECK(run("bogus") == 1);

  const std::string capped = write_config("capped.json", R"({
    "grid": {"kind": "disc", "n": 33},
    "law": {"kind": "box", "alpha": 0, "beta": 1},
    "cost": {"kind": "energy"},
    "rhs": {"kind": "fourballs"},
    "opt": {"tol": 0, "max_iter": 1}
  })");
  const fs::path out = kWork / "capped";
  CHECK(run("optimize --config " + capped + " --out " + out.string()) == 2);
  CHECK(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "m.csv"));
}

TEST_CASE("repeated runs are byte-identical") {
  const std::string cfg = config("second_beta1.json");
  const fs::path a = kWork / "det_a";
  const fs::path b = kWork / "det_b";
  REQUIRE(run("optimize --config " + cfg + " --out " + a.string()) == 0);
  REQUIRE(run("optimize --config " + cfg + " --out " + b.string()) == 0);
  for (const char* name : {"m.csv", "u.csv", "z.csv", "report.json", "m.pgm"}) {
    CHECK(read_text(a / name) == read_text(b / name));
  }
}
