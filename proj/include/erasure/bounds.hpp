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

#include "erasure/states.hpp"

namespace erasure {

/// Probability-operator measure on the accessible subsystem B.
class Pom {
 public:
  static constexpr double kTol = 1e-10;

  /// Throws kInvalidPom unless every element is Hermitian PSD and the
  /// elements sum to the identity (both within kTol).
  explicit Pom(std::vector<ComplexMatrix> elements);

  /// Rank-1 projectors onto the columns of a unitary.
  static Pom from_basis(const ComplexMatrix& unitary);
  static Pom trivial(int dim);

  int dim() const { return static_cast<int>(elements_.front().rows()); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }

 private:
  std::vector<ComplexMatrix> elements_;
};

struct BoundReport {
  double V = 0.0;
  double P = 0.0;
  double C_AB = 0.0;
  double D_AB = 0.0;
  double C_full = 0.0;
  double D_full = 0.0;
};

/// sum_k |Tr[((sigma_x + i sigma_y) (x) pi_k (x) 1) rho]| = 2 sum_k |Tr(pi_k chi_B)|.
double avg_visibility(const ConditionalBlocks& blocks, const Pom& pom);
double avg_visibility(const TripartitePureState& state, const Pom& pom);

/// sum_k |Tr[(sigma_z (x) pi_k (x) 1) rho]| = sum_k |Tr(pi_k (rho_B0 - rho_B1))|.
double avg_predictability(const ConditionalBlocks& blocks, const Pom& pom);
double avg_predictability(const TripartitePureState& state, const Pom& pom);

/// E(x, y) = Tr(xy) + sqrt(2) sqrt(Tr(xy)^2 - Tr(xyxy)) for PSD x, y.
/// Bilinear, so unnormalized operands are fine. Evaluated from the singular
/// values of sqrt(x) sqrt(y), the same ones that give the Uhlmann fidelity,
/// so E <= F^2 survives rounding. Throws kDimensionMismatch / kNotPsd.
double sub_fidelity(const ComplexMatrix& x, const ComplexMatrix& y);
double sub_fidelity(const DensityMatrix& x, const DensityMatrix& y);

/// E(A^dagger A, B^dagger B) evaluated through the small Gram matrix
/// G = A B^dagger: Tr(xy) = Tr(G G^dagger), Tr(xyxy) = Tr((G G^dagger)^2).
/// A and B must share their column count.
double sub_fidelity_factored(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr sqrt(sqrt(x) y sqrt(x)) (not squared).
double uhlmann_fidelity(const DensityMatrix& x, const DensityMatrix& y);

/// C_{A|B} = 2 Tr|chi_B|, any d_B.
double coherence_bound(const ConditionalBlocks& blocks);
double coherence_bound(const TripartitePureState& state);

/// C_{A|B} = 2 sqrt(E(rho_C0, rho_C1)); requires d_B = 2
/// (kWrongAccessibleDimension otherwise).
double coherence_bound_subfidelity(const ConditionalBlocks& blocks);
double coherence_bound_subfidelity(const TripartitePureState& state);

/// C_{A|B} = 2 T with T from the three-variable nested radical; requires d_B = 3.
double coherence_bound_dim3(const ConditionalBlocks& blocks);
double coherence_bound_dim3(const TripartitePureState& state);

/// D_{A|B} = Tr|rho_B0 - rho_B1|.
double distinguishability_bound(const ConditionalBlocks& blocks);
double distinguishability_bound(const TripartitePureState& state);

/// Two-dimensional closed form with x = rho_B0 - rho_B1:
///   D^2 = 2 Tr(x^2) - Tr(x)^2  if Tr(x^2) >= Tr(x)^2,  else Tr(x)^2.
/// The branches agree on the boundary. Requires d_B = 2.
double distinguishability_bound_piecewise(const ConditionalBlocks& blocks);

/// V, P of the reduced qubit, the B-restricted bounds, and the
/// whole-environment bounds (B := B (x) C). Values are clamped to [0, 1].
BoundReport full_bounds(const TripartitePureState& state);

}  // namespace erasure
