#include "support.hpp"

#include "shadowlab/experiments.hpp"

using namespace shadowlab;
using testing::R;

namespace {

ExperimentConfig base(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  auto c = base("ex41");
  CHECK_NOTHROW(c.validate());
  c.K = 7;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = base("ex41");
  c.periods = {2, 6, 8};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.periods = {1, 2};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = base("ex41");
  c.window = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = base("ex1");
  c.deltas = {R(1, 4)};
  c.range = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.range = 1;
  CHECK_NOTHROW(c.validate());
  c.deltas.clear();
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = base("chains");
  c.deltas = {R(1)};
  c.range = 0;
  CHECK_NOTHROW(c.validate());
  c.deltas = {R(-1)};
  CHECK_THROWS_AS(c.validate(), ConfigError);

  c = base("odometer");
  c.mode = "bogus";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.mode = "isometry";
  c.depth = 8;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(run_experiment(base("nothing")), ConfigError);
}

TEST_CASE("rational lists") {
  CHECK(parse_rat_list("1/4,1/16, 1/64") == std::vector<Rat>{R(1, 4), R(1, 16), R(1, 64)});
  CHECK(parse_rat_list("").empty());
  CHECK_THROWS_AS(parse_rat_list("1/4,x"), std::invalid_argument);
}

TEST_CASE("ex41 runs") {
  auto c = base("ex41");
  c.K = 2, c.depth = 6, c.window = 128;
  const auto run = run_experiment(c);
  CHECK(run.overall() == Status::Pass);
  const auto& w = run.reports.front().witnesses;
  CHECK(std::find(w.begin(), w.end(), std::pair<std::string, std::string>{"e_0", "1/4"}) != w.end());
  c.K = 3, c.depth = 8, c.window = 256;
  const auto run3 = run_experiment(c);
  CHECK(run3.overall() == Status::Pass);
  const auto& w3 = run3.reports.front().witnesses;
  CHECK(std::find(w3.begin(), w3.end(), std::pair<std::string, std::string>{"tail_bound", "1/8"}) != w3.end());
}

TEST_CASE("ex1 runs, including an oversized delta") {
  auto c = base("ex1");
  c.deltas = {R(1, 4), R(1, 16), R(1, 64)};
  c.window = 64;
  CHECK(run_experiment(c).overall() == Status::Pass);
  c.deltas = {R(3)};
  const auto run = run_experiment(c);
  CHECK(run.reports.front().status == Status::Inapplicable);
  CHECK(run.overall() == Status::Pass);
}

TEST_CASE("ladder limit orbits") {
  for (const auto& y : {Point::fixed_zero(), Point::fixed_one(), Point::fixed_two()}) {
    const auto po = ladder_limit_orbit(y, 9, 64);
    CHECK(po.size() >= 64);
    CHECK(po.satisfies_schedule());
    CHECK(po[po.size() - 1] == y);
    const auto rep = ladder_limit_check(y, 9, 64);
    CHECK(rep.passed());
  }
  CHECK_THROWS_AS(ladder_limit_orbit(Point::s(1), 3, 10), std::invalid_argument);
}

TEST_CASE("odometer and chains runs") {
  auto c = base("odometer");
  for (const char* mode : {"shadow", "exhaustive", "limit", "thick", "isometry"}) {
    CAPTURE(mode);
    c.mode = mode;
    c.depth = std::string(mode) == "exhaustive" ? 3 : 4;
    c.length = std::string(mode) == "exhaustive" ? 5 : 40;
    c.trials = 20;
    c.window = 64;
    CHECK(run_experiment(c).overall() == Status::Pass);
  }
  c.mode = "limit";
  c.plan = "single-jump:10:7";
  const auto run = run_experiment(c);
  const auto& w = run.reports.front().witnesses;
  CHECK(std::find(w.begin(), w.end(), std::pair<std::string, std::string>{"limit", "13"}) != w.end());
  c.plan = "single-jump:x";
  CHECK_THROWS_AS(run_experiment(c), ConfigError);

  auto ch = base("chains");
  ch.range = 0;
  ch.deltas = {R(1), R(1, 2)};
  const auto chains = run_experiment(ch);
  CHECK(chains.overall() == Status::Pass);
  const auto comp = [&](std::size_t i) {
    for (const auto& [k, v] : chains.reports[i].witnesses) {
      if (k == "components") return v;
    }
    return std::string();
  };
  CHECK(comp(0) == "{{0, 1, 2}}");
  CHECK(comp(1) == "{{0}, {1}, {2}}");
  ch.system = "circle";
  CHECK_THROWS_AS(run_experiment(ch), ConfigError);
}

TEST_CASE("machine reports are byte-identical across reruns") {
  auto c = base("odometer");
  c.mode = "shadow";
  c.depth = 6;
  c.trials = 30;
  c.length = 30;
  c.seed = 99;
  const auto a = run_experiment(c).to_machine();
  const auto b = run_experiment(c).to_machine();
  CHECK(a == b);
  c.seed = 100;
  CHECK(run_experiment(c).to_machine() != a);
}

TEST_CASE("report rendering") {
  VerificationReport r("demo", "a claim");
  r.param("eps", R(1, 4)).witness("y", Point::residue(3));
  r.seed = 5;
  CHECK(r.to_machine() ==
        R"({"id":"demo","anchor":"a claim","params":{"eps":"1/4"},"witnesses":[["y","3"]],"status":"pass","seed":5})");
  r.fail("broken");
  CHECK(r.status == Status::Fail);
  CHECK(r.to_text().find("[fail] demo") != std::string::npos);
  RunReport empty{"x", {}, 0.0};
  CHECK(empty.overall() == Status::Fail);
}
