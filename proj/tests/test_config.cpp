#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "crystalwalk/config.hpp"
#include "crystalwalk/errors.hpp"
#include "crystalwalk/verify.hpp"

using namespace crystalwalk;

namespace {

std::string field_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("JSON round trip") {
  ExperimentConfig c;
  c.type = "D";
  c.rank = 4;
  c.delta = "w1,w3,w4";
  c.t = {"1/2", "0.25", "1/3", "2/5"};
  c.budgets.mc_n = 1234;
  c.budgets.seed = 99;
  c.threads = 2;
  c.out = "out.json";
  CHECK(ExperimentConfig::from_json(c.to_json()) == c);
  CHECK(ExperimentConfig::from_json(nlohmann::json::parse(c.to_json().dump())) == c);
}

TEST_CASE("TOML parsing") {
  const auto c = ExperimentConfig::from_toml(R"(
type = "C"
rank = 2
delta = "w1"
drift = ["0.4", "0.2"]

[budgets]
mc_n = 500
seed = 7

[output]
format = "csv"
)");
  CHECK(c.type == "C");
  CHECK(c.rank == 2);
  CHECK(c.drift == std::vector<std::string>{"0.4", "0.2"});
  CHECK(c.t.empty());
  CHECK(c.budgets.mc_n == 500);
  CHECK(c.budgets.seed == 7);
  CHECK(c.format == "csv");
  c.validate();
  const auto t = make_params(c, make_delta(make_root_system(c), c.delta, false)).t;
  CHECK(t[0] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("load picks the format from the file") {
  ExperimentConfig c;
  c.rank = 1;
  const std::string json_path = "crystalwalk_test_config.json";
  std::ofstream(json_path) << c.to_json().dump(2);
  CHECK(ExperimentConfig::load(json_path) == c);
  std::remove(json_path.c_str());
  const std::string toml_path = "crystalwalk_test_config.toml";
  std::ofstream(toml_path) << "type = \"B\"\nrank = 3\ndelta = \"w3\"\nt = [\"0.5\", \"0.5\", \"0.5\"]\n";
  const auto b = ExperimentConfig::load(toml_path);
  std::remove(toml_path.c_str());
  CHECK(b.type == "B");
  CHECK(b.t.size() == 3);
}

TEST_CASE("config errors name the field") {
  ExperimentConfig c;
  c.rank = 0;
  CHECK(field_of([&] { c.validate(); }) == "rank");
  c = ExperimentConfig{};
  c.type = "G";
  CHECK(field_of([&] { c.validate(); }) == "type");
  c = ExperimentConfig{};
  c.t = {"1/2", "1/2"};
  CHECK(field_of([&] { c.validate(); }) == "t");
  c = ExperimentConfig{};
  c.t = {"abc"};
  CHECK(field_of([&] { c.validate(); }) == "t[0]");
  CHECK(field_of([] { ExperimentConfig::from_json({{"colour", 1}}); }) == "colour");
  CHECK(field_of([] { ExperimentConfig::from_json({{"budgets", {{"mc_m", 1}}}}); }) == "budgets.mc_m");
  CHECK(field_of([] { ExperimentConfig::from_json({{"rank", "two"}}); }) == "rank");
  CHECK(field_of([] { ExperimentConfig::load("/nonexistent/file.toml"); }) == "--config");
}

TEST_CASE("delta specifications") {
  ExperimentConfig c;
  c.type = "B";
  c.rank = 3;
  c.t = {"1/2", "1/2", "1/2"};
  const auto rs = make_root_system(c);
  CHECK(make_delta(rs, "w3", false)->size() == 8);
  CHECK_THROWS_AS(make_delta(rs, "w1", false), NotMinusculeError);
  CHECK(make_delta(rs, "w1", true)->size() == 7);
  CHECK(field_of([&] { make_delta(rs, "w9", false); }) == "delta");
  CHECK(field_of([&] { make_delta(rs, "v1", false); }) == "delta");
}

TEST_CASE("verify runs a named suite and rejects unknown ones") {
  ExperimentConfig c;
  const auto r = run_named_suite("doob", c);
  CHECK(r.status == Status::Pass);
  CHECK(field_of([&] { run_named_suite("nope", c); }) == "suite");
  CHECK(nonincreasing({3, 2, 2, 1}));
  CHECK_FALSE(strictly_decreasing({3, 2, 2, 1}));
}
