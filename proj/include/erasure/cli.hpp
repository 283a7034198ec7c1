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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace erasure::cli {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitNoConvergence = 4;
inline constexpr int kExitInsufficientData = 5;

struct VerifyReport {
  long long checks_run = 0;
  double max_route_delta = 0.0;
  double max_attainment_gap = 0.0;
  std::vector<std::string> failures;
};

/// "builtin": hand-solved states (Bell, GHZ, products, zero-padded
/// embeddings, a C_full^2 + D_full^2 > 1 witness).
/// "random": n seeded random states for route equality and hierarchies,
/// plus attainment sweeps on the first attainment_n (2, 2, 2) states.
VerifyReport run_verification(const std::string& corpus, int n, std::uint64_t seed,
                              int attainment_n);

std::string verify_report_json(const VerifyReport& report);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace erasure::cli
