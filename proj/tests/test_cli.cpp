// Copyright 2026 The qfound Authors
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

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qfound/cli.hpp"
#include "qfound/report.hpp"

using namespace qfound::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(const std::vector<std::string>& args) {
  const Run r = run_cli(args);
  INFO("args: " << doctest::toString(args.front()) << " stderr: " << r.err);
  REQUIRE(r.code == kExitPass);
  return Json::parse(r.out);
}

std::string without_wall_time(const std::string& text) {
  Json j = Json::parse(text);
  j.erase("wall_time_s");
  return j.dump();
}

// Fast argument lists covering every subcommand.
const std::vector<std::vector<std::string>> kCommands = {
    {"vn-reconstruct", "--dim", "3"},
    {"dispersion", "--dim", "4"},
    {"jauch-piron", "--a", "0.1,0.2,0.9", "--b", "1,0,0"},
    {"--samples", "20000", "bell-hv", "--beta", "0.3,-0.4,0.5", "--theta", "1", "--lambda", "0.1"},
    {"ks-color", "--peres"},
    {"ks-color", "--peres", "--drop", "0"},
    {"mermin"},
    {"bell"},
    {"chsh"},
    {"chsh", "--optimize", "--restarts", "4"},
    {"--samples", "2000", "wigner"},
    {"wigner", "--weights", "0.5,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0.5"},
    {"ghz"},
    {"hardy", "--p1", "0.3", "--p2", "0.8"},
    {"hardy", "--optimize"},
    {"--samples", "100", "nosignal"},
    {"--samples", "40000", "simulate", "--workers", "3"},
    {"--samples", "40000", "simulate", "--source", "lhv:sphere"},
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("every subcommand passes and its verdicts reproduce") {
  for (const auto& args : kCommands) {
    const Json j = run_json(args);
    INFO(j["command"]);
    CHECK(j["status"] == "PASS");
    CHECK(!j["checks"].empty());
    CHECK(verdicts_reproduce(j));
    CHECK(j.contains("wall_time_s"));
  }
}

TEST_CASE("identical argv gives identical reports apart from wall time") {
  for (const auto& args : kCommands) {
    const Run a = run_cli(args), b = run_cli(args);
    CHECK(without_wall_time(a.out) == without_wall_time(b.out));
  }
}

TEST_CASE("seed changes seeded reports") {
  const Run a = run_cli({"--seed", "1", "vn-reconstruct"});
  const Run b = run_cli({"--seed", "2", "vn-reconstruct"});
  CHECK(without_wall_time(a.out) != without_wall_time(b.out));
}

TEST_CASE("headline results from the command line") {
  const Json chsh = run_json({"chsh", "--optimize", "--state", "singlet"});
  CHECK(std::abs(chsh["outputs"]["S_star"].get<double>() - 2.8284271) <= 1e-6);

  const Json ks = run_json({"ks-color", "--peres"});
  CHECK(ks["outputs"]["verdict"] == "UNSAT");
  CHECK(ks["outputs"]["rays"] == 33);
  CHECK(ks["outputs"]["orthogonal_pairs"] == 72);
  CHECK(ks["outputs"]["triads"] == 16);

  const Json hardy = run_json({"hardy", "--optimize"});
  CHECK(std::abs(hardy["outputs"]["p_max"].get<double>() - 0.0901699) <= 1e-7);
  CHECK(std::abs(hardy["outputs"]["p1"].get<double>() - 0.6180340) <= 1e-6);
  CHECK(std::abs(hardy["outputs"]["p2"].get<double>() - 0.6180340) <= 1e-6);
}

TEST_CASE("dropping a Peres ray yields a certified colouring") {
  const Json j = run_json({"ks-color", "--peres", "--drop", "32"});
  CHECK(j["outputs"]["verdict"] == "SAT");
  CHECK(j["outputs"]["coloring"].get<std::string>().size() == 32);
}

TEST_CASE("ray files written by the CLI read back") {
  const std::string path = QFOUND_TEST_TMP_DIR "/cli_peres.rays";
  run_json({"ks-color", "--peres", "--emit-rays", path});
  const Json j = run_json({"ks-color", "--rays", path});
  CHECK(j["outputs"]["verdict"] == "UNSAT");
  CHECK(j["outputs"]["rays"] == 33);
}

TEST_CASE("simulate reads a config file") {
  const Json j = run_json({"simulate", "--config", QFOUND_TEST_DATA_DIR "/reference.cfg"});
  CHECK(j["seed"] == 2024);
  CHECK(j["inputs"]["workers"] == 4);
  CHECK(j["inputs"]["n_pairs"] == 400000);
  CHECK(j.contains("notes"));
}

TEST_CASE("CSV output") {
  const Run r = run_cli({"--format", "csv", "ghz"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.rfind("key,value\n", 0) == 0);
  CHECK(r.out.find("outputs.satisfying_assignments,0\n") != std::string::npos);
  CHECK(r.out.find("status,PASS\n") != std::string::npos);
}

TEST_CASE("quiet prints nothing") {
  const Run r = run_cli({"--quiet", "mermin"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.empty());
}

TEST_CASE("a failed claim exits 1") {
  // No construction meets a tolerance below the double-precision floor.
  const Run r = run_cli({"hardy", "--tol", "1e-300"});
  CHECK(r.code == kExitClaimFailed);
  const Json j = Json::parse(r.out);
  CHECK(j["status"] == "FAIL");
  CHECK(verdicts_reproduce(j));
}

TEST_CASE("input errors exit 2 with a message on the error stream") {
  const std::vector<std::vector<std::string>> bad = {
      {},
      {"no-such-command"},
      {"chsh", "--no-such-flag"},
      {"--format", "xml", "ghz"},
      {"hardy", "--p1", "0"},
      {"hardy", "--p1", "abc"},
      {"simulate", "--visibility", "1.5"},
      {"simulate", "--source", "lhv:psychic"},
      {"simulate", "--config", "/nonexistent.cfg"},
      {"ks-color"},
      {"ks-color", "--peres", "--rays", "x"},
      {"ks-color", "--rays", "/nonexistent.rays"},
      {"ks-color", "--peres", "--drop", "33"},
      {"jauch-piron", "--a", "0,0,1", "--b", "0,0,-1"},
      {"jauch-piron", "--a", "0,0"},
      {"chsh", "--state", "triplet"},
      {"vn-reconstruct", "--dim", "1"},
      {"wigner", "--weights", "1,2,3"},
      {"bell", "--eta", "1,0,1"},
  };
  for (const auto& args : bad) {
    const Run r = run_cli(args);
    INFO("args: " << (args.empty() ? std::string("<none>") : args.front()));
    CHECK(r.code == kExitInputError);
    CHECK(r.out.empty());
    CHECK(!r.err.empty());
  }
  CHECK(run_cli({"bogus"}).err.find("Usage") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const Run r = run_cli({"--help"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("simulate") != std::string::npos);
}

}  // TEST_SUITE
