// Copyright 2026 The Erasure Bound Authors
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

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "erasure/cli.hpp"
#include "erasure/experiments.hpp"
#include "json.hpp"

using namespace erasure;
using Catch::Matchers::WithinAbs;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ERASURE_TEST_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("erasure_test_" + name);
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

}  // namespace

TEST_CASE("bound on reference states", "[cli]") {
  const Result bell = run_cli({"bound", data("bell_ab.json")});
  REQUIRE(bell.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(bell.out);
  CHECK_THAT(j["C_AB"].get<double>(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(j["D_AB"].get<double>(), WithinAbs(1.0, 1e-12));
  CHECK(j["route_used"] == "subfidelity");

  const auto ghz = nlohmann::json::parse(run_cli({"bound", data("ghz.json")}).out);
  CHECK_THAT(ghz["C_AB"].get<double>(), WithinAbs(0.0, 1e-12));
  CHECK_THAT(ghz["D_AB"].get<double>(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(ghz["C_full"].get<double>(), WithinAbs(1.0, 1e-12));

  const auto plus = nlohmann::json::parse(run_cli({"bound", data("product_plus.json")}).out);
  CHECK_THAT(plus["V"].get<double>(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(plus["C_AB"].get<double>(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(plus["P"].get<double>(), WithinAbs(0.0, 1e-12));

  const std::string dim3 = temp_file("dim3.json", R"({"dims":[2,3,1],"amps":[[0.6,0],[0,0],[0,0],[0,0],[0,0],[0.8,0]]})");
  const Result r3 = run_cli({"bound", dim3});
  CHECK(r3.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(r3.out)["route_used"] == "dim3");
}

TEST_CASE("bound error statuses", "[cli]") {
  CHECK(run_cli({"bound", temp_file("bad.json", "{oops")}).code == cli::kExitParse);
  CHECK(run_cli({"bound", "/nonexistent.json"}).code == cli::kExitParse);
  CHECK(run_cli({"bound"}).code == cli::kExitParse);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitParse);
  const Result off = run_cli({"bound", temp_file("off.json", R"({"dims":[2,1,1],"amps":[[1,0],[0.5,0]]})")});
  CHECK(off.code == cli::kExitInvariant);
  const Result warn = run_cli({"bound", temp_file("warn.json", R"({"dims":[2,1,1],"amps":[[1.00001,0],[0,0]]})")});
  CHECK(warn.code == cli::kExitOk);
  CHECK(warn.err.find("warning") != std::string::npos);
}

TEST_CASE("subfidelity command", "[cli]") {
  const Result same = run_cli({"subfidelity", data("rho_plus.json"), data("rho_plus.json")});
  REQUIRE(same.code == cli::kExitOk);
  auto j = nlohmann::json::parse(same.out);
  CHECK_THAT(j["E"].get<double>(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(j["F"].get<double>(), WithinAbs(1.0, 1e-7));

  const std::string minus = temp_file("minus.json", R"({"mat":[[[0.5,0],[-0.5,0]],[[-0.5,0],[0.5,0]]]})");
  j = nlohmann::json::parse(run_cli({"subfidelity", data("rho_plus.json"), minus}).out);
  CHECK_THAT(j["E"].get<double>(), WithinAbs(0.0, 1e-12));
  CHECK_THAT(j["F"].get<double>(), WithinAbs(0.0, 1e-7));

  const std::string mixed = temp_file("half.json", R"({"mat":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]})");
  j = nlohmann::json::parse(run_cli({"subfidelity", mixed, mixed}).out);
  CHECK_THAT(j["E"].get<double>(), WithinAbs(1.0, 1e-12));

  const std::string big = temp_file("big.json", R"({"mat":[[[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]})");
  CHECK(run_cli({"subfidelity", mixed, big}).code == cli::kExitInvariant);
}

TEST_CASE("sweep is byte-identical for a fixed seed", "[cli]") {
  const std::vector<std::string> args{"--quiet", "sweep", "--dc-list", "1,2,4", "--samples", "10000", "--seed", "7"};
  const Result a = run_cli(args);
  const Result b = run_cli(args);
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.err.empty());
  const Result threaded = run_cli({"--threads", "3", "--quiet", "sweep", "--dc-list", "1,2,4", "--samples", "10000", "--seed", "7"});
  CHECK(threaded.out == a.out);
  const Result other = run_cli({"--quiet", "sweep", "--dc-list", "1,2,4", "--samples", "10000", "--seed", "8"});
  CHECK(other.out != a.out);
  const auto rows = parse_sweep_csv(a.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(rows[0].mean_c - 9 * std::numbers::pi / 32) < 5 * rows[0].std_error);
}

TEST_CASE("sweep options", "[cli]") {
  const Result progress = run_cli({"sweep", "--dc-list", "2", "--samples", "200", "--seed", "1"});
  CHECK(progress.err.find("dC=2") != std::string::npos);
  const Result json = run_cli({"--quiet", "sweep", "--dc-list", "2", "--samples", "200", "--seed", "1", "--out", "json"});
  REQUIRE(json.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(json.out)["points"].size() == 1);
  const Result full = run_cli({"--quiet", "sweep", "--dc-list", "2", "--samples", "200", "--seed", "1", "--path", "full"});
  const Result fast = run_cli({"--quiet", "sweep", "--dc-list", "2", "--samples", "200", "--seed", "1"});
  CHECK_THAT(parse_sweep_csv(full.out)[0].mean_c, WithinAbs(parse_sweep_csv(fast.out)[0].mean_c, 1e-12));
  const auto out_path = std::filesystem::temp_directory_path() / "erasure_test_sweep.csv";
  CHECK(run_cli({"--quiet", "sweep", "--dc-list", "2", "--samples", "200", "--seed", "1", "--output", out_path.string()}).code == 0);
  std::ifstream in(out_path);
  std::stringstream file;
  file << in.rdbuf();
  CHECK(file.str() == fast.out);
  CHECK(run_cli({"sweep", "--dc-list", "2,1", "--samples", "200"}).code == cli::kExitInvariant);
  CHECK(run_cli({"sweep", "--dc-list", "2,x"}).code == cli::kExitParse);
  CHECK(run_cli({"sweep", "--dc-list", "2", "--out", "xml"}).code == cli::kExitParse);
}

TEST_CASE("fit command", "[cli]") {
  std::string csv = std::string(kSweepCsvHeader) + "\n";
  csv += "10,20,0.4,0.01,0.3,0.5,1000,0.2\n";
  csv += "20,40,0.3,0.02,0.2,0.4,1000,0.15\n";
  csv += "40,80,0.2,0.01,0.1,0.3,1000,0.1\n";
  const Result r = run_cli({"fit", temp_file("fit.csv", csv)});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK_THAT(j["c_hat"].get<double>(), WithinAbs(2.0, 1e-13));
  CHECK(j.contains("c_stderr"));
  CHECK(j["residuals"].size() == 3);

  const std::string two = std::string(kSweepCsvHeader) + "\n10,20,0.4,0.01,0.3,0.5,1000,0.2\n20,40,0.3,0.02,0.2,0.4,1000,0.15\n";
  CHECK(run_cli({"fit", temp_file("two.csv", two)}).code == cli::kExitInsufficientData);
  CHECK(run_cli({"fit", temp_file("junk.csv", "a,b\n1,2\n")}).code == cli::kExitParse);
}

TEST_CASE("verify command", "[cli]") {
  const Result builtin = run_cli({"verify", "--corpus", "builtin"});
  CHECK(builtin.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(builtin.out);
  CHECK(j["failures"].empty());
  CHECK(j["checks_run"].get<long long>() > 50);

  const Result random = run_cli({"verify", "--corpus", "random", "--n", "200", "--attainment-n", "5", "--seed", "3"});
  CHECK(random.code == cli::kExitOk);
  const auto k = nlohmann::json::parse(random.out);
  CHECK(k["max_route_delta"].get<double>() < 1e-9);
  CHECK(k["max_attainment_gap"].get<double>() < 1e-4);
}

TEST_CASE("verification report flags failures", "[cli]") {
  cli::VerifyReport report;
  report.failures.push_back("x");
  const auto j = nlohmann::json::parse(cli::verify_report_json(report));
  CHECK(j["failures"].size() == 1);
  CHECK(cli::run_verification("builtin", 0, 1, 0).failures.empty());
}
