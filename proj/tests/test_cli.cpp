#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "soco/bounds.hpp"
#include "soco/io.hpp"

using namespace soco;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("advice_soco_test_" + name);
  std::ofstream(p) << content;
  return p;
}

// Tests run from the source tree (see tests/CMakeLists.txt).
const std::string kDemo = "docs/instances/demo.json";
const std::string kConvex = "docs/instances/convex1d.json";

}  // namespace

TEST_CASE("run on the demo instance") {
  const Result r = invoke({"run", "--instance", kDemo});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["algorithm"] == "aos");
  CHECK(j["opt_cost"] == 7.0);
  for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("run: every algorithm on the convex line instance") {
  for (const char* algo : {"aos", "ftp", "aobd", "greedy", "blind"}) {
    CAPTURE(algo);
    const Result r = invoke({"run", "--instance", kConvex, "--algo", algo});
    CHECK(r.code == cli::kExitOk);
    CHECK(json::parse(r.out)["opt_method"] == "grid_dp");
  }
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kExitConfig);
  CHECK(invoke({"frobnicate"}).code == cli::kExitConfig);
  CHECK(invoke({"run", "--instance", kDemo, "--delta", "0"}).code == cli::kExitConfig);
  CHECK(invoke({"run", "--instance", kDemo, "--algo", "nope"}).code == cli::kExitConfig);
  CHECK(invoke({"run", "--instance", "/nonexistent.json"}).code == cli::kExitConfig);
  CHECK(invoke({"run"}).code == cli::kExitConfig);
  CHECK(invoke({"run", "--instance", kDemo, "--generate", "finite"}).code == cli::kExitConfig);
  CHECK(invoke({"run", "--instance", kDemo, "--algo", "aobd"}).code == cli::kExitConfig);
  CHECK(invoke({"bounds", "--alpha", "0.3", "--delta", "0.7", "--t-max", "65"}).code == cli::kExitConfig);
  CHECK(invoke({"adversarial", "memoryless", "--algo", "aobd"}).code == cli::kExitConfig);

  const fs::path bad = temp_file("nonconvex.json", R"({"space": {"kind": "line"}, "x0": 0,
      "costs": [{"type": "piecewise_linear", "knots": [0, 1, 2], "values": [0, 1, 0.5],
                 "left_slope": -1, "right_slope": 1}], "predictions": [2]})");
  CHECK(invoke({"run", "--instance", bad.string(), "--algo", "aobd"}).code == cli::kExitModel);

  const fs::path broken = temp_file("broken.json", "{ not json");
  CHECK(invoke({"run", "--instance", broken.string()}).code == cli::kExitConfig);

  CHECK(invoke({"--version"}).code == cli::kExitOk);
}

TEST_CASE("identical inputs give byte-identical output") {
  const std::vector<std::string> args = {"run", "--generate", "finite", "--seed", "17", "--algo", "aos"};
  CHECK(invoke(args).out == invoke(args).out);
  const std::vector<std::string> sweep = {"sweep", "--count", "20", "--seed", "3"};
  const Result a = invoke(sweep);
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == invoke(sweep).out);
  CHECK(invoke({"sweep", "--count", "20", "--seed", "3", "--jobs", "4"}).out == a.out);
}

TEST_CASE("flags take precedence over the config file, which beats defaults") {
  const fs::path cfg = temp_file("config.json", R"({"algo": "ftp", "delta": 0.25})");
  const json from_file = json::parse(invoke({"run", "--config", cfg.string(), "--instance", kDemo}).out);
  CHECK(from_file["algorithm"] == "ftp");
  const json flag = json::parse(invoke({"run", "--config", cfg.string(), "--instance", kDemo, "--algo", "aos"}).out);
  CHECK(flag["algorithm"] == "aos");
  const json defaults = json::parse(invoke({"run", "--instance", kDemo}).out);
  CHECK(defaults["algorithm"] == "aos");

  const fs::path bad = temp_file("config_bad.json", R"([1, 2])");
  CHECK(invoke({"run", "--config", bad.string(), "--instance", kDemo}).code == cli::kExitConfig);
  CHECK(invoke({"run", "--config", "/nonexistent.json", "--instance", kDemo}).code == cli::kExitConfig);
}

TEST_CASE("ADVICE_SOCO_JOBS must be a positive integer") {
  ::setenv("ADVICE_SOCO_JOBS", "zero", 1);
  CHECK(invoke({"sweep", "--count", "2"}).code == cli::kExitConfig);
  ::setenv("ADVICE_SOCO_JOBS", "2", 1);
  CHECK(invoke({"sweep", "--count", "2"}).code == cli::kExitOk);
  ::unsetenv("ADVICE_SOCO_JOBS");
}

TEST_CASE("bounds output matches the library") {
  const Result r = invoke({"bounds", "--alpha", "0.5", "--delta", "0.5", "--t-max", "6"});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["tilde_U"].get<double>() == doctest::Approx(tilde_U(0.5, 0.5)).epsilon(1e-15));
  REQUIRE(j["dual"].size() == 6u);
  for (int t = 1; t <= 6; ++t) {
    CHECK(j["dual"][t - 1]["U"].get<double>() == solve_U(t, 0.5, 0.5).U);
    CHECK(j["primal"][t - 1]["objective"].get<double>() == solve_L(t, 0.5, 0.5).objective);
  }
}

TEST_CASE("bounds with a non-integral 2/(alpha delta) marks the closed form as skipped") {
  const Result r = invoke({"bounds", "--alpha", "0.3", "--delta", "0.7", "--t-max", "2"});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["tilde_U"].is_null());
  CHECK(j.contains("tilde_U_skipped"));
}

TEST_CASE("adversarial games emit one transcript per algorithm") {
  const Result r = invoke({"adversarial", "lower-bound", "--algo", "blind,greedy,ftp,aos"});
  REQUIRE(r.code == cli::kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::vector<json> ts;
  while (std::getline(in, line)) ts.push_back(json::parse(line));
  REQUIRE(ts.size() == 4u);
  CHECK(ts[0]["algorithm"] == "blind");
  CHECK(ts[1]["measured_cr"].get<double>() == doctest::Approx(1.0));
  CHECK(ts[0]["measured_cr"].get<double>() == doctest::Approx(10.765139893345026).epsilon(1e-6));

  for (const char* game : {"one-dim", "bregman", "memoryless"}) {
    CAPTURE(game);
    CHECK(invoke({"adversarial", game, "--algo", "blind", "--rounds", "10"}).code == cli::kExitOk);
  }
}

TEST_CASE("microgrid default produces 30 rows") {
  const Result r = invoke({"microgrid"});
  REQUIRE(r.code == cli::kExitOk);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 31u);
}

TEST_CASE("--out writes to a file") {
  const fs::path p = fs::temp_directory_path() / "advice_soco_test_out.json";
  fs::remove(p);
  const Result r = invoke({"run", "--instance", kDemo, "--out", p.string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(p);
  CHECK(json::parse(in)["opt_cost"] == 7.0);
}
