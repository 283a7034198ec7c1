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
#include <optional>

#include "erasure/linalg.hpp"

namespace erasure {

/// Pure state of a qubit A and a split environment B (accessible) and C
/// (inaccessible). Amplitudes are stored in (a, b, c) order with c fastest:
///   index = (a * d_b + b) * d_c + c.
class TripartitePureState {
 public:
  static constexpr int kQubitDim = 2;
  static constexpr double kNormTol = 1e-10;

  /// Throws kInvalidState unless amps.size() == 2 * d_b * d_c and the norm is
  /// 1 within kNormTol.
  TripartitePureState(int d_b, int d_c, ComplexVector amps);

  /// Renormalizes; throws kInvalidState for a zero vector.
  static TripartitePureState normalized(int d_b, int d_c, ComplexVector amps);

  int d_b() const { return d_b_; }
  int d_c() const { return d_c_; }
  int env_dim() const { return d_b_ * d_c_; }
  const ComplexVector& amps() const { return amps_; }

  Complex amp(int a, int b, int c) const { return amps_[(a * d_b_ + b) * d_c_ + c]; }

  /// d_b x d_c matrix of the unnormalized environment state paired with
  /// qubit value a (rows b, columns c).
  ComplexMatrix env_matrix(int a) const;

  /// 2 x (d_b d_c) matrix with rows indexed by a.
  ComplexMatrix qubit_env_matrix() const;

  /// The same amplitudes viewed with all of B (x) C accessible: dims (2, d_b d_c, 1).
  TripartitePureState merged_environment() const;

  /// Zero-pads B and C up to the given dimensions.
  TripartitePureState embedded(int d_b, int d_c) const;

 private:
  int d_b_;
  int d_c_;
  ComplexVector amps_;
};

/// Hermitian PSD operator. Normalized density matrices carry unit trace;
/// the conditional "tilde" operators are built with unnormalized = true.
class DensityMatrix {
 public:
  static constexpr double kTol = 1e-10;

  explicit DensityMatrix(ComplexMatrix mat, bool unnormalized = false);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const ComplexMatrix& mat() const { return mat_; }
  bool unnormalized() const { return unnormalized_; }
  double trace() const { return real_trace(mat_); }

  /// Divides by the trace; throws kNegligibleProbability for a (near) zero trace.
  DensityMatrix normalized() const;

 private:
  ComplexMatrix mat_;
  bool unnormalized_;
};

/// Blocks of rho_AB in the qubit's computational basis plus the matching
/// conditional states of C:
///   rho_AB = [[rho_B0, chi_B], [chi_B^dagger, rho_B1]].
struct ConditionalBlocks {
  DensityMatrix rho_b0;
  DensityMatrix rho_b1;
  ComplexMatrix chi_b;
  DensityMatrix rho_c0;
  DensityMatrix rho_c1;
  double p0;
  double p1;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

enum Subsystem : std::uint8_t { kSubsystemA = 1, kSubsystemB = 2, kSubsystemC = 4 };

/// Reduced state on the kept subsystems (bitwise OR of Subsystem values),
/// ordered A, B, C with the last kept factor fastest. Throws kEmptyKeepSet.
DensityMatrix partial_trace(const TripartitePureState& state, unsigned keep);

ConditionalBlocks conditional_blocks(const TripartitePureState& state);

/// Reassembles [[rho_B0, chi_B], [chi_B^dagger, rho_B1]].
ComplexMatrix assemble_ab(const ConditionalBlocks& blocks);

/// x = 2 Re rho01, y = -2 Im rho01, z = rho00 - rho11. Throws kWrongDimension.
BlochVector bloch(const DensityMatrix& rho);

double visibility(const DensityMatrix& rho);
double predictability(const DensityMatrix& rho);

/// Outcome of conditioning the qubit on an environment event.
struct ConditionedQubit {
  double probability = 0.0;
  std::optional<DensityMatrix> state;  // empty when probability <= kProbabilityFloor

  /// Throws kNegligibleProbability when no state is available.
  const DensityMatrix& state_or_throw() const;
};

inline constexpr double kProbabilityFloor = 1e-14;

/// Unnormalized Tr_BC[(1 (x) pi (x) 1) rho] for a PSD operator pi on B.
ComplexMatrix conditional_qubit_unnormalized(const TripartitePureState& state,
                                             const ComplexMatrix& pom_element);

/// Conditional qubit state and probability for one POM element on B.
/// Throws kInvalidPom unless 0 <= pi <= 1 on H_B.
ConditionedQubit conditional_qubit(const TripartitePureState& state,
                                   const ComplexMatrix& pom_element);

struct ProjectedQubit {
  double probability = 0.0;
  std::optional<ComplexVector> qubit;  // unit vector, empty below the floor

  const ComplexVector& qubit_or_throw() const;
};

/// Projects the environment (B (x) C, index b * d_c + c) onto env_vector.
/// Throws kInvalidState unless env_vector has unit norm within 1e-10.
ProjectedQubit selective_projection(const TripartitePureState& state,
                                    const ComplexVector& env_vector);

/// Schmidt coefficients of the A : BC cut, descending.
std::vector<double> qubit_schmidt_coefficients(const TripartitePureState& state);

// Reference states.

/// (|00> + |11>)/sqrt(2) on AB, zero-padded to (d_b, d_c); C sits in |0>.
TripartitePureState make_bell_ab(int d_b = 2, int d_c = 1);

/// (|000> + |111>)/sqrt(2), zero-padded to (d_b, d_c).
TripartitePureState make_ghz(int d_b = 2, int d_c = 2);

/// qubit (x) env with env indexed b * d_c + c; both are normalized here.
TripartitePureState make_product(const ComplexVector& qubit, int d_b, int d_c,
                                 const ComplexVector& env);

}  // namespace erasure
