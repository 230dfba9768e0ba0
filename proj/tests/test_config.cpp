#include <doctest.h>

#include <json.hpp>

#include "slowdiff/config.hpp"
#include "slowdiff/io.hpp"

using namespace slowdiff;
using nlohmann::json;

TEST_CASE("minimal config fills defaults") {
  const json j = json::parse(R"({"map": {"variant": "example1", "F": "sin", "alpha": "golden"}})");
  const RunConfig cfg = config_from_json(j);
  CHECK(cfg.map.variant == MapVariant::Example1);
  CHECK(cfg.map.A.r_plateau() == 0.3);
  CHECK(cfg.map.A.r_support() == 0.6);
  CHECK(cfg.seed == 0);
  CHECK(cfg.schedule.front() == 1);
  CHECK(cfg.schedule.back() == 131072);
  CHECK(cfg.psi.kind() == PsiSpec::Kind::Power);
  const auto echo = config_echo(cfg);
  CHECK(echo["map"]["variant"] == "example1");
  CHECK(echo["map"]["A"]["r_plateau"] == 0.3);
  CHECK(echo["schedule"].size() == 18);
}

TEST_CASE("psi rejection names the rule") {
  const json j = json::parse(R"({"psi": {"kind": "power", "beta": 1.0}})");
  CHECK_THROWS_WITH_AS(config_from_json(j), doctest::Contains("o(x)"), std::invalid_argument);
}

TEST_CASE("bump radii rejection names the rule") {
  const json j = json::parse(R"({"map": {"A": {"r_plateau": 0.7, "r_support": 0.6}}})");
  CHECK_THROWS_WITH_AS(config_from_json(j), doctest::Contains("bump radii"),
                       std::invalid_argument);
}

TEST_CASE("schedule forms") {
  CHECK(parse_schedule(json("dyadic:8")) == std::vector<std::int64_t>{1, 2, 4, 8});
  CHECK(parse_schedule(json("list:3,9,27")) == std::vector<std::int64_t>{3, 9, 27});
  CHECK(parse_schedule(json::parse("[1, 5, 25]")) == std::vector<std::int64_t>{1, 5, 25});
  const json bad = json::parse(R"({"schedule": [4, 2]})");
  CHECK_THROWS_WITH_AS(config_from_json(bad), doctest::Contains("schedule"),
                       std::invalid_argument);
}

TEST_CASE("alpha forms") {
  const json j = json::parse(R"({
    "map": {"alpha": {"family": "liouville", "base": 2, "depth": 3}}
  })");
  CHECK(config_from_json(j).map.alpha.value() == 0.765625);
  const json q = json::parse(R"({"map": {"alpha": 0.25}})");
  CHECK(config_from_json(q).map.alpha.degenerate());
}

TEST_CASE("resonant block builds a coupled pair") {
  const json j = json::parse(R"({
    "map": {"variant": "chart", "resonant": {"psi": "power:0.5", "depth": 4, "quotient": 2}}
  })");
  const RunConfig cfg = config_from_json(j);
  CHECK(cfg.from_resonant);
  CHECK(cfg.map.F.harmonics().size() == 4);
  CHECK(cfg.map.alpha.family() == RotationNumber::Family::CfConstant);
  const json conflict = json::parse(R"({
    "map": {"resonant": {"depth": 2}, "F": "sin"}
  })");
  CHECK_THROWS_AS(config_from_json(conflict), std::invalid_argument);
}

TEST_CASE("example variants require d = 1") {
  const json j = json::parse(R"({"map": {"variant": "example2", "d": 2}})");
  CHECK_THROWS_WITH_AS(config_from_json(j), doctest::Contains("d = 1"), std::invalid_argument);
}

TEST_CASE("fmt_g17 round-trips doubles") {
  for (double v : {0.1, 0.6180339887498949, 1.0 / 3.0, 123456.789, 1e-300}) {
    CHECK(std::stod(fmt_g17(v)) == v);
  }
}
