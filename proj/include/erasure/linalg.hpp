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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "erasure/error.hpp"

namespace erasure {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Tolerances for Hermitian/PSD checks, relative to the largest entry
/// magnitude of the operand.
struct Tolerances {
  double hermitian = 1e-10;
  double psd = 1e-10;
};

/// Largest entry magnitude, the scale every relative tolerance refers to.
double max_abs(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = Tolerances{}.hermitian);

/// Eigenvalues of a Hermitian matrix in descending order.
///
/// 2x2 inputs use the closed form; larger ones go through Eigen's
/// self-adjoint solver. Throws kNonSquare / kNotHermitian.
std::vector<double> herm_eigvals(const ComplexMatrix& m, const Tolerances& tol = {});

/// Singular values in descending order, one per column (zero-padded when
/// rows < cols), i.e. the clamped square roots of the spectrum of M^dagger M.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Schatten-1 norm of a square matrix.
double trace_norm(const ComplexMatrix& m);

/// Elementary symmetric polynomials s_1..s_order of the eigenvalues of a
/// Hermitian matrix, obtained from power traces through Newton's identities.
/// Supports order 1, 2, 3.
std::vector<double> sym_polys_from_traces(const ComplexMatrix& m, int order,
                                          const Tolerances& tol = {});

/// Tr|M| for 2x2 M as sqrt(s1 + 2 sqrt(s2)) with s_k the symmetric
/// polynomials of M^dagger M.
double trace_norm_newton_2(const ComplexMatrix& m);

/// Tr|M| for 3x3 M: the nonnegative fixed point of
///   T = sqrt(s1 + 2 sqrt(s2 + 2 sqrt(s3) T)).
/// Throws kNoConvergence if the iteration does not settle within
/// kNewton3MaxIterations.
double trace_norm_newton_3(const ComplexMatrix& m);

inline constexpr int kNewton3MaxIterations = 200;
inline constexpr double kNewton3StepTol = 1e-13;

/// Principal square root of a Hermitian PSD matrix. Eigenvalues down to
/// -psd_tol * scale are clamped to zero; below that throws kNotPsd.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m, const Tolerances& tol = {});

/// Real part of the trace; the imaginary part of Hermitian products is noise.
double real_trace(const ComplexMatrix& m);

/// Number of radicands clamped so far (negative round-off or a symmetric
/// polynomial below the round-off floor). Process-wide diagnostic.
std::uint64_t radicand_clamp_count();

/// Clamps a negative radicand to zero and counts it.
double clamp_radicand(double value);

}  // namespace erasure
