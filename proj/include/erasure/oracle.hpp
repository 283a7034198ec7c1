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

#include <vector>

#include "erasure/sampling.hpp"

namespace erasure {

/// Record of a maximization. `history` holds the best value after every
/// iteration and never decreases.
struct OptimizationTrace {
  double best_value = 0.0;
  std::vector<double> best_parameters;
  long long iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

struct SearchOptions {
  // Restarts begin at the best of `probes` uniformly random parameter
  // vectors; the objectives can be flat away from the optimum.
  int probes = 16384;
  int restarts = 16;
  double initial_step = 0.5;
  double step_tol = 1e-10;
};

/// Orthonormal basis of C^d (columns of the result) from d^2 - 1 angles:
/// d - 1 diagonal phases followed by (theta, phi) for each Givens pair
/// (i < j), applied as U = diag(1, e^{i phase}...) * G_01 * G_02 * ... .
ComplexMatrix basis_from_angles(int d, const std::vector<double>& angles);
int basis_angle_count(int d);

/// Maximizes the average visibility over projective measurements of H_B by
/// multi-start compass search. `budget` caps the coordinate sweeps per
/// restart. Requires d_B in {2, 3}.
OptimizationTrace optimize_erasure_projective(const TripartitePureState& state, int budget,
                                              SeededStream stream,
                                              const SearchOptions& options = {});

/// Same search for the average predictability.
OptimizationTrace optimize_which_alternative_projective(const TripartitePureState& state,
                                                        int budget, SeededStream stream,
                                                        const SearchOptions& options = {});

/// Index-by-index literal evaluation of the defining partial traces.
ConditionalBlocks naive_conditional_blocks(const TripartitePureState& state);

struct ReachabilityResult {
  OptimizationTrace trace;          // best_value is the fidelity with the target
  ComplexVector env_vector;         // unit vector on B (x) C
  double success_probability = 0.0;
};

/// Searches environment vectors whose selective projection leaves the qubit
/// closest to `target`. Throws kProductState when the A : BC Schmidt rank is
/// 1 (second coefficient <= 1e-10).
ReachabilityResult reachability_search(const TripartitePureState& state,
                                       const ComplexVector& target, int budget,
                                       SeededStream stream, const SearchOptions& options = {});

}  // namespace erasure
