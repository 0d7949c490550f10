// Copyright 2026 The entwit Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "entwit/cli.hpp"
#include "entwit/io.hpp"

using namespace entwit;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "entwit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("entwit_test_" + name)).string();
}

}  // namespace

TEST_CASE("state JSON round-trips exactly") {
  DensityMatrix rho = random_density({2, 3}, 3, 5);
  json j = state_to_json(rho);
  DensityMatrix back = state_from_json(json::parse(j.dump()));
  CHECK(back.dims() == rho.dims());
  CHECK((back.op() - rho.op()).cwiseAbs().maxCoeff() <= 1e-15);

  const std::string path = temp_path("state.json");
  save_state(rho, path);
  CHECK((load_state(path).op() - rho.op()).cwiseAbs().maxCoeff() <= 1e-15);
  std::remove(path.c_str());
}

TEST_CASE("state JSON errors") {
  CHECK_THROWS_AS(state_from_json(json::parse(R"({"re": [[1]]})")), IoError);
  CHECK_THROWS_AS(state_from_json(json::parse(R"({"dims": [2], "re": [[1, 0], [0]]})")), IoError);
  CHECK_THROWS_AS(state_from_json(json::parse(R"({"dims": [2], "re": [[1, 0], [0, 1]]})")), StateError);
  CHECK_THROWS_AS(load_state(temp_path("missing.json")), IoError);
}

TEST_CASE("measure result JSON") {
  auto r = robustness(ghz(2), 1);
  json j = measure_result_to_json(r);
  for (const char* key : {"measure", "k", "m", "n", "value", "gap", "converged", "witness", "cuts", "primal_weights"})
    CHECK(j.contains(key));
  CHECK(j["m"].is_null());
  CHECK(j["n"] == 1.0);
  CHECK(j["measure"] == "robustness");
  CHECK((matrix_from_json(j["witness"]) - r.witness.op).norm() == 0.0);
}

TEST_CASE("report JSON") {
  TheoremReport rep;
  rep.name = "x";
  rep.add_residual("r", 0.1, 1.0);
  rep.add_artifact("a", 2.0);
  rep.finalize();
  json j = report_to_json(rep);
  CHECK(j["pass"] == true);
  CHECK(j["residuals"]["r"]["threshold"] == 1.0);
  CHECK(j["artifacts"]["a"] == 2.0);
  rep.has_verdict = false;
  CHECK(report_to_json(rep)["pass"].is_null());
}

TEST_CASE("state grammar") {
  CHECK((parse_state_source("ghz:2").op() - ghz(2).op()).norm() == 0.0);
  CHECK((parse_state_source("w:3").op() - w_state(3).op()).norm() == 0.0);
  CHECK((parse_state_source("wghz:0.5").op() - wghz_family(0.5).op()).norm() == 0.0);
  CHECK(parse_state_source("maxmixed:2x3").dims() == Dims{2, 3});
  CHECK(parse_state_source("random:2x2:2:7").rank() == 2);
  CHECK(parse_state_source("randompure:3x2:1").purity() == doctest::Approx(1.0));
  CHECK(parse_state_source("product:2x2").op()(0, 0) == 1.0);
  CHECK_THROWS_AS(parse_state_source("ghz:x"), UsageError);
  CHECK_THROWS_AS(parse_state_source("wghz:2"), UsageError);
  CHECK_THROWS_AS(parse_state_source("nosuchstate"), UsageError);
  CHECK_THROWS_AS(parse_state_source("wghz"), UsageError);
}

TEST_CASE("grid grammar") {
  CHECK(parse_grid("0.5,1,2") == std::vector<double>{0.5, 1, 2});
  CHECK(parse_grid("0:1:5") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
  CHECK(parse_grid("").empty());
  CHECK_THROWS_AS(parse_grid("1:2"), UsageError);
  CHECK_THROWS_AS(parse_grid("a,b"), UsageError);
}

TEST_CASE("measure command") {
  auto r = run({"measure", "--state", "ghz:2", "--measure", "robustness", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("value:      1.000000") != std::string::npos);

  auto b = run({"measure", "--state", "wghz:0.5", "--measure", "bsa", "--k", "1", "--json"});
  CHECK(b.code == 0);
  json j = json::parse(b.out);
  CHECK(j["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));

  auto mm = run({"measure", "--state", "maxmixed:2x2", "--measure", "robustness"});
  CHECK(mm.code == 0);
  CHECK(mm.out.find("value:      0.000000") != std::string::npos);

  auto e = run({"measure", "--state", "ghz:2", "--measure", "emn", "--lower", "0.01", "--upper", "1"});
  CHECK(e.code == 0);
}

TEST_CASE("measure command errors") {
  CHECK(run({"measure", "--state", "bogus:1"}).code == 1);
  CHECK(run({"measure", "--state", "ghz:2", "--measure", "nope"}).code == 1);
  CHECK(run({"measure", "--state", "ghz:2", "--k", "3"}).code == 1);
  CHECK(run({"measure", "--state", "ghz:2", "--measure", "emn"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("measure command reads state files and writes witnesses") {
  const std::string in = temp_path("bell.json"), wout = temp_path("witness.json");
  save_state(ghz(2), in);
  auto r = run({"measure", "--state", in, "--measure", "bsa", "--witness-out", wout});
  CHECK(r.code == 0);
  std::ifstream f(wout);
  json w;
  f >> w;
  CHECK(matrix_from_json(w).rows() == 4);
  std::remove(in.c_str());
  std::remove(wout.c_str());
}

TEST_CASE("sweep rows are in grid order and deterministic") {
  SweepConfig cfg;
  cfg.grid = {0.01, 4.0};
  cfg.q_grid = {0.0, 1.0};
  cfg.jobs = 2;
  auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].bound == 0.01);
  CHECK(rows[1].q == 1.0);
  CHECK(rows[2].bound == 4.0);
  // Small lower bound: E / m tracks BSA = 1.
  CHECK(rows[0].result.value / 0.01 == doctest::Approx(1.0).epsilon(0.05));
  CHECK(rows[1].result.value / 0.01 == doctest::Approx(1.0).epsilon(0.05));
  cfg.jobs = 1;
  CHECK(sweep_csv(run_sweep(cfg)) == sweep_csv(rows));
  const std::string csv = sweep_csv(rows);
  CHECK(csv.rfind("bound,q,value,gap,converged,iterations\n", 0) == 0);
  CHECK(csv.find("0.01,0,") != std::string::npos);
}

TEST_CASE("sweep command") {
  const std::string out = temp_path("sweep.csv");
  auto r = run({"sweep", "--n-grid", "0.01", "--q-grid", "0.5", "--out", out, "--jobs", "1"});
  CHECK(r.code == 0);
  std::ifstream f(out);
  std::string header, row;
  std::getline(f, header);
  std::getline(f, row);
  CHECK(header == "bound,q,value,gap,converged,iterations");
  CHECK(row.rfind("0.01,0.5,", 0) == 0);
  std::remove(out.c_str());

  CHECK(run({"sweep", "--grid", ""}).code == 1);
  CHECK(run({"sweep", "--grid", "1", "--q-grid", "1.5"}).code == 1);
  CHECK(run({"sweep", "--grid", "1,0.5,2"}).code == 1);
  CHECK(run({"sweep", "--grid", "1", "--out", "/nonexistent-dir/x.csv"}).code == 1);
}

TEST_CASE("sweep config validation") {
  SweepConfig cfg;
  CHECK_THROWS_AS(run_sweep(cfg), UsageError);
  cfg.grid = {1.0};
  cfg.q_grid = {};
  CHECK_THROWS_AS(run_sweep(cfg), UsageError);
  cfg.q_grid = {0.5};
  cfg.release = "sideways";
  CHECK_THROWS_AS(run_sweep(cfg), UsageError);
}

TEST_CASE("verify command") {
  auto s = run({"verify", "schmidt", "--seed", "7"});
  CHECK(s.code == 0);
  CHECK(s.out.find("FAIL") == std::string::npos);
  CHECK(run({"verify", "unknown"}).code == 1);
  auto j = run({"verify", "schmidt", "--json"});
  CHECK(json::parse(j.out).size() == 40);
  CHECK_THROWS_AS(run_verify_suite("nope", 1), UsageError);
}
