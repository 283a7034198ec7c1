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

#include <string>

#include "erasure/states.hpp"

namespace erasure {

/// State files: {"dims": [2, d_B, d_C], "amps": [[re, im], ...]} with
/// amplitudes in (a, b, c) order, c fastest.
struct LoadedState {
  TripartitePureState state;
  bool renormalized = false;   // norm was off by more than 1e-8 but within 1e-4
  double norm_deviation = 0.0; // | ||amps||^2 - 1 |
};

inline constexpr double kStateNormAccept = 1e-8;
inline constexpr double kStateNormRepair = 1e-4;

/// Throws kParse for malformed JSON or shape errors and kInvalidState when
/// the norm is off by more than kStateNormRepair.
LoadedState parse_state_json(const std::string& text);

/// Density-matrix files: {"mat": [[[re, im], ...], ...]} (square, row-major).
/// The matrix must be a normalized density matrix.
DensityMatrix parse_density_json(const std::string& text);

std::string state_to_json(const TripartitePureState& state);
std::string density_to_json(const ComplexMatrix& mat);

/// Reads a whole file; throws kParse if it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace erasure
