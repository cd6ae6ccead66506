#include <doctest.h>

#include "soco/io.hpp"
#include "soco/offline.hpp"
#include "soco/selftest.hpp"

using namespace soco;

namespace {

json demo() {
  return json::parse(R"({
    "space": {"kind": "finite", "coordinates": [0, 1, 2, 4, 7]},
    "x0": 0, "T": 2, "alpha": 0.5,
    "costs": [[3.5, 3.0, 2.5, 1.5, 0.0], [null, 2.0, 1.5, 0.5, {"x": 1}]],
    "predictions": [4, 2]
  })");
}

std::string error_of(const json& j) {
  try {
    episode_from_json(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("finite episode parses with null as an infinite cost") {
  json j = demo();
  j["costs"][1][4] = 2.0;
  const auto ep = std::get<Episode<DiscreteSpace>>(episode_from_json(j));
  CHECK(ep.instance.horizon() == 2u);
  CHECK(is_infinite(ep.instance.cost(2)(0)));
  CHECK(ep.instance.alpha() == 0.5);
  REQUIRE(ep.predictions);
  CHECK(*ep.predictions == std::vector<std::size_t>{4, 2});
  CHECK(ep.instance.space().distance(1, 4) == 6.0);
}

TEST_CASE("round trip through JSON preserves every space kind") {
  const std::vector<std::string> docs = {
      R"({"space": {"kind": "finite", "matrix": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]}, "x0": 1,
          "costs": [{"values": [1, 0, null]}], "predictions": [2]})",
      R"({"space": {"kind": "cube", "bits": 2, "scale": 3}, "x0": 0, "costs": [[4, 0, 1, 2]]})",
      R"({"space": {"kind": "line"}, "x0": 0.5, "switching": "half_squared",
          "costs": [{"type": "abs", "weight": 2, "center": 1},
                    {"type": "piecewise_linear", "knots": [0, 1], "values": [1, 0], "left_slope": -2, "right_slope": 3},
                    {"type": "quadratic", "curvature": 2, "center": -1, "offset": 0.25}],
          "predictions": [1, 1, -1]})",
      R"({"space": {"kind": "plane"}, "x0": [0, 0],
          "costs": [{"type": "cone", "alpha": 0.3, "vertex": [1, 2], "normal": [0, 1], "penalty": 10}],
          "predictions": [[1, 0]]})",
  };
  for (const auto& d : docs) {
    const json in = json::parse(d);
    const json once = to_json(episode_from_json(in));
    const json twice = to_json(episode_from_json(once));
    CHECK(once == twice);
  }
}

TEST_CASE("random instances survive a round trip with identical optimum") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const RandomFinite rf = random_finite(derive_seed(41, s));
    const json j = to_json(AnyEpisode(Episode<DiscreteSpace>{rf.instance, rf.predictions}));
    const auto back = std::get<Episode<DiscreteSpace>>(episode_from_json(json::parse(j.dump())));
    CHECK(opt_dp_finite(back.instance).total == opt_dp_finite(rf.instance).total);
    CHECK(*back.predictions == rf.predictions);
  }
}

TEST_CASE("errors carry a location") {
  CHECK(error_of(demo()).find("costs[1][4]") != std::string::npos);

  json j = demo();
  j["costs"][1][4] = 2.0;
  j["T"] = 3;
  CHECK(error_of(j).find("T:") == 0);

  j = demo();
  j["costs"][0] = json::array({1, 2});
  CHECK(error_of(j).find("costs[0]") != std::string::npos);

  j = demo();
  j["space"]["kind"] = "torus";
  CHECK(error_of(j).find("space.kind") != std::string::npos);

  j = demo();
  j["costs"][1][4] = 2.0;
  j.erase("x0");
  CHECK(error_of(j).find("x0") != std::string::npos);

  j = demo();
  j["costs"][1][4] = 2.0;
  j["x0"] = 9;
  CHECK(error_of(j).find("invalid instance") != std::string::npos);

  j = demo();
  j["costs"][1][4] = 2.0;
  j["costs"][0][0] = -1.0;
  CHECK_FALSE(error_of(j).empty());

  CHECK_FALSE(error_of(json::parse(R"({"space": {"kind": "line"}, "x0": 0,
      "costs": [{"type": "spline"}]})")).empty());
}

TEST_CASE("load_episode reports unreadable files") {
  CHECK_THROWS_AS(load_episode("/nonexistent/instance.json"), ConfigError);
}

TEST_CASE("numbers: infinities and NaN become null") {
  CHECK(number(kInfinity).is_null());
  CHECK(number(std::nan("")).is_null());
  CHECK(number(1.5) == 1.5);
}

TEST_CASE("report JSON lists checks and bounds") {
  json j = demo();
  j["costs"][1][4] = 2.0;
  const auto ep = std::get<Episode<DiscreteSpace>>(episode_from_json(j));
  const EpisodeReport r = run_episode(ep.instance, *ep.predictions, EpisodeConfig{});
  const json out = to_json(r);
  CHECK(out["algorithm"] == "aos");
  CHECK(out["opt_method"] == "exact_dp");
  CHECK(out["checks"].is_array());
  CHECK(out["bounds"].is_array());
  CHECK(r.all_checks_pass());
}
