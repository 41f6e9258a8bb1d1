// Copyright 2026 The invlearn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "invlearn/cli.hpp"

using namespace invlearn;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("invlearn_test_" + name);
  fs::remove_all(p);
  return p;
}

const fs::path kGolden = INVLEARN_GOLDEN_DIR;

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parse config defaults and flags") {
  const ExperimentConfig c = parse_config({"run-experiment", "--beta", "0.5", "--seed", "7"});
  CHECK(c.cost().h() == 5.0);
  CHECK(c.cost().b() == 5.0);
  CHECK(c.seed == 7);
  CHECK(c.dbar == 20);
  CHECK(c.h_plus_b == 10.0);
  CHECK(c.K == 1000);
  CHECK(c.L == 100);
  CHECK(c.T == 10000);
  CHECK(c.gamma_insep == 0.0);

  const ExperimentConfig d = parse_config({"run-experiment", "--beta", "0.9", "--policies", "updown,oracle",
                                           "--alphas", "0,0.99", "--checkpoints", "1,50,100", "--T", "100"});
  CHECK(d.cost().b() == doctest::Approx(9.0));
  CHECK(d.policies == std::vector<PolicyKind>{PolicyKind::UpDown, PolicyKind::Oracle});
  CHECK(d.alphas == std::vector<double>{0.0, 0.99});
  CHECK(d.checkpoints == std::vector<std::int64_t>{1, 50, 100});
}

TEST_CASE("parse config rejects bad values with the key") {
  try {
    parse_config({"run-experiment", "--beta", "1.2"});
    FAIL("accepted beta 1.2");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "beta");
  }
  try {
    parse_config({"run-experiment", "--h-plus-b", "0"});
    FAIL("accepted h+b = 0");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "h_plus_b");
  }
  CHECK_THROWS(parse_config({"run-experiment", "--K", "many"}));
  CHECK_THROWS(parse_config({"run-experiment", "--policies", "bayes"}));
  CHECK_THROWS(parse_config({"run-experiment", "--nope", "1"}));
}

TEST_CASE("config file then flags") {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "c.json");
    f << R"({"K": 200, "L": 7, "beta": 0.25, "policies": ["sa"]})";
  }
  const std::string path = (dir / "c.json").string();
  const ExperimentConfig c = parse_config({"run-experiment", "--config", path, "--K", "50"});
  CHECK(c.K == 50);
  CHECK(c.L == 7);
  CHECK(c.beta == 0.25);
  CHECK(c.policies == std::vector<PolicyKind>{PolicyKind::StochasticApprox});

  {
    std::ofstream f(dir / "bad.json");
    f << R"({"K": 200, "colour": "red"})";
  }
  CHECK_THROWS_AS(parse_config({"run-experiment", "--config", (dir / "bad.json").string()}), ConfigError);
  CHECK(cli({"run-experiment", "--config", (dir / "missing.json").string()}).code == 1);

  // The manifest's config block reads back to the same config.
  const ExperimentConfig back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  fs::remove_all(dir);
}

TEST_CASE("exit codes") {
  CHECK(cli({"run-experiment", "--beta", "1.2"}).code == 1);
  const Run empty = cli({"run-experiment", "--policies", ""});
  CHECK(empty.code == 1);
  CHECK(empty.err.find("policies") != std::string::npos);
  CHECK(cli({"diagnose-distribution"}).code == 1);
  CHECK(cli({"diagnose-distribution", "--pmf", "0.5,0.6"}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"--help"}).code == 0);

  const fs::path blocker = scratch("blocker");
  { std::ofstream f(blocker); f << "x"; }
  const Run unwritable = cli({"run-experiment", "--K", "1", "--L", "1", "--T", "4", "--out-dir", (blocker / "sub").string()});
  CHECK(unwritable.code == 2);
  fs::remove(blocker);
}

TEST_CASE("diagnose golden") {
  const Run r = cli({"diagnose-distribution", "--pmf", "0.3,0.4,0.3", "--beta", "0.5"});
  CHECK(r.code == 0);
  CHECK(r.out == slurp(kGolden / "diagnose.csv"));
  CHECK(r.out.find("delta,0.19999999999999996\n") != std::string::npos);
  CHECK(r.out.find("tau,118\n") != std::string::npos);

  const Run t = cli({"diagnose-distribution", "--pmf", "[0.3, 0.4, 0.3]", "--beta", "0.5", "--trace-policy",
                     "newsvendor", "--trace-T", "8", "--seed", "5"});
  CHECK(t.code == 0);
  CHECK(t.out == slurp(kGolden / "diagnose_trace.csv"));
}

TEST_CASE("diagnose reports an unbounded burn-in as NA") {
  const Run r = cli({"diagnose-distribution", "--pmf", "0.4999999,0.5000001", "--beta", "0.5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("tau,NA\n") != std::string::npos);
  CHECK(r.out.find("theorem1_bound,NA\n") != std::string::npos);
}

TEST_CASE("run-experiment golden and repeatability") {
  const std::vector<std::string> base{"run-experiment", "--dbar", "5", "--K", "4", "--L", "2", "--T", "16",
                                      "--alphas", "0,0.5", "--policies", "newsvendor,sa,updown", "--seed", "3"};
  const fs::path a = scratch("run_a");
  const fs::path b = scratch("run_b");
  auto args_a = base;
  args_a.insert(args_a.end(), {"--out-dir", a.string(), "--threads", "1"});
  auto args_b = base;
  args_b.insert(args_b.end(), {"--out-dir", b.string(), "--threads", "2"});
  REQUIRE(cli(args_a).code == 0);
  REQUIRE(cli(args_b).code == 0);
  for (const char* name : {"surface.csv", "detail.csv"}) {
    CHECK(slurp(a / name) == slurp(b / name));
    CHECK(slurp(a / name) == slurp(kGolden / name));
  }
  // threads is recorded, so only the config-independent part must match.
  auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
  auto golden = nlohmann::json::parse(slurp(kGolden / "manifest.json"));
  manifest["config"].erase("threads");
  golden["config"].erase("threads");
  CHECK(manifest == golden);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("output directory from the environment") {
  const fs::path dir = scratch("env");
  ::setenv(kOutDirEnv, dir.string().c_str(), 1);
  const Run r = cli({"run-experiment", "--dbar", "3", "--K", "2", "--L", "1", "--T", "9"});
  ::unsetenv(kOutDirEnv);
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "surface.csv"));
  CHECK(fs::exists(dir / "detail.csv"));
  CHECK(fs::exists(dir / "manifest.json"));
  fs::remove_all(dir);
}

TEST_CASE("bounds-report golden") {
  const fs::path dir = scratch("bounds");
  const Run r = cli({"bounds-report", "--dbar", "3", "--K", "3", "--seed", "1", "--out-dir", dir.string()});
  CHECK(r.code == 0);
  CHECK(slurp(dir / "bounds.csv") == slurp(kGolden / "bounds.csv"));
  fs::remove_all(dir);
}

TEST_CASE("csv layout") {
  ExperimentConfig c;
  c.dbar = 4;
  c.K = 3;
  c.L = 2;
  c.T = 9;
  c.alphas = {0.0, 0.5};
  c.policies = {PolicyKind::Newsvendor};
  const RegretSurface s = run_experiment(c);
  const std::string surface = surface_csv(s, c);
  CHECK(surface.rfind("policy,beta,gamma_insep,t,alpha,R,D\n", 0) == 0);
  CHECK(std::count(surface.begin(), surface.end(), '\n') == 1 + 3 * 2);
  const std::string detail = detail_csv(s);
  CHECK(detail.rfind("policy,k,delta,kappa_or_inf,t,r\n", 0) == 0);
  CHECK(std::count(detail.begin(), detail.end(), '\n') == 1 + 3 * 3);
  CHECK(detail.find("\nnewsvendor,1,") != std::string::npos);
  CHECK(detail.find("\nnewsvendor,0,") == std::string::npos);
}

}  // TEST_SUITE
