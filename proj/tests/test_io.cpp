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

#include "erasure/io.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace erasure;
using namespace erasure_test;
using Catch::Matchers::WithinAbs;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected throw");
  return ErrorCode::kParse;
}

std::string amps_file(double scale) {
  const double r = scale / std::sqrt(2.0);
  nlohmann::json j{{"dims", {2, 2, 1}}, {"amps", {{r, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, r}}}};
  return j.dump();
}

}  // namespace

TEST_CASE("state files", "[io]") {
  const LoadedState bell = parse_state_json(read_text_file(ERASURE_TEST_DATA_DIR "/bell_ab.json"));
  CHECK_FALSE(bell.renormalized);
  CHECK((bell.state.amps() - make_bell_ab().amps()).norm() < 1e-15);

  const LoadedState slight = parse_state_json(amps_file(std::sqrt(1.0 + 5e-9)));
  CHECK_FALSE(slight.renormalized);
  CHECK_THAT(slight.state.amps().norm(), WithinAbs(1.0, 1e-15));

  const LoadedState repaired = parse_state_json(amps_file(std::sqrt(1.0 + 5e-5)));
  CHECK(repaired.renormalized);
  CHECK_THAT(repaired.norm_deviation, WithinAbs(5e-5, 1e-12));
  CHECK_THAT(repaired.state.amps().norm(), WithinAbs(1.0, 1e-15));

  CHECK(code_of([] { parse_state_json(amps_file(std::sqrt(1.01))); }) == ErrorCode::kInvalidState);
  CHECK(code_of([] { parse_state_json("{not json"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_state_json(R"({"dims":[2,2,2],"amps":[[1,0]]})"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_state_json(R"({"dims":[3,1,1],"amps":[[1,0],[0,0],[0,0]]})"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_state_json(R"({"dims":[2,1,1],"amps":[[1],[0,0]]})"); }) == ErrorCode::kParse);
  CHECK(code_of([] { read_text_file("/nonexistent/state.json"); }) == ErrorCode::kParse);
}

TEST_CASE("state round trip", "[io]") {
  std::mt19937_64 gen(51);
  const TripartitePureState s(2, 3, random_unit(12, gen));
  const LoadedState back = parse_state_json(state_to_json(s));
  CHECK(back.state.d_b() == 2);
  CHECK(back.state.d_c() == 3);
  CHECK((back.state.amps() - s.amps()).norm() < 1e-15);
}

TEST_CASE("density files", "[io]") {
  const DensityMatrix plus = parse_density_json(read_text_file(ERASURE_TEST_DATA_DIR "/rho_plus.json"));
  CHECK(plus.dim() == 2);
  CHECK_THAT(plus.mat()(0, 1).real(), WithinAbs(0.5, 1e-15));
  std::mt19937_64 gen(52);
  const Mat rho = random_density(3, 2, gen);
  CHECK((parse_density_json(density_to_json(rho)).mat() - rho).norm() < 1e-15);
  CHECK(code_of([] { parse_density_json(R"({"mat":[[[1,0],[0,0]]]})"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_density_json(R"({"mat":[[[2,0],[0,0]],[[0,0],[0,0]]]})"); }) != ErrorCode::kParse);
}
