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

#include "erasure/states.hpp"

#include <array>
#include <cmath>
#include <string>

namespace erasure {
namespace {

void require_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw Error(ErrorCode::kWrongDimension, "qubit operator expected, got dim " +
                                                std::to_string(rho.dim()));
  }
}

}  // namespace

TripartitePureState::TripartitePureState(int d_b, int d_c, ComplexVector amps)
    : d_b_(d_b), d_c_(d_c), amps_(std::move(amps)) {
  if (d_b < 1 || d_c < 1) {
    throw Error(ErrorCode::kInvalidState, "environment dimensions must be positive");
  }
  if (amps_.size() != kQubitDim * d_b * d_c) {
    throw Error(ErrorCode::kInvalidState,
                "expected " + std::to_string(kQubitDim * d_b * d_c) + " amplitudes, got " +
                    std::to_string(amps_.size()));
  }
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw Error(ErrorCode::kInvalidState, "squared norm " + std::to_string(norm2));
  }
}

TripartitePureState TripartitePureState::normalized(int d_b, int d_c, ComplexVector amps) {
  const double norm = amps.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::kInvalidState, "zero amplitude vector");
  amps /= norm;
  return TripartitePureState(d_b, d_c, std::move(amps));
}

ComplexMatrix TripartitePureState::env_matrix(int a) const {
  // Row-major d_b x d_c slice of the amplitude vector.
  ComplexMatrix m(d_b_, d_c_);
  const Eigen::Index offset = static_cast<Eigen::Index>(a) * d_b_ * d_c_;
  for (int b = 0; b < d_b_; ++b) {
    for (int c = 0; c < d_c_; ++c) m(b, c) = amps_[offset + b * d_c_ + c];
  }
  return m;
}

ComplexMatrix TripartitePureState::qubit_env_matrix() const {
  const int env = env_dim();
  ComplexMatrix m(kQubitDim, env);
  for (int a = 0; a < kQubitDim; ++a) {
    for (int e = 0; e < env; ++e) m(a, e) = amps_[a * env + e];
  }
  return m;
}

TripartitePureState TripartitePureState::merged_environment() const {
  return TripartitePureState(env_dim(), 1, amps_);
}

TripartitePureState TripartitePureState::embedded(int d_b, int d_c) const {
  if (d_b < d_b_ || d_c < d_c_) {
    throw Error(ErrorCode::kInvalidState, "embedding must not shrink B or C");
  }
  ComplexVector out = ComplexVector::Zero(kQubitDim * d_b * d_c);
  for (int a = 0; a < kQubitDim; ++a) {
    for (int b = 0; b < d_b_; ++b) {
      for (int c = 0; c < d_c_; ++c) out[(a * d_b + b) * d_c + c] = amp(a, b, c);
    }
  }
  return TripartitePureState(d_b, d_c, std::move(out));
}

DensityMatrix::DensityMatrix(ComplexMatrix mat, bool unnormalized)
    : mat_(std::move(mat)), unnormalized_(unnormalized) {
  if (mat_.rows() != mat_.cols() || mat_.rows() == 0) {
    throw Error(ErrorCode::kNonSquare, "density matrix must be square and nonempty");
  }
  if (!is_hermitian(mat_, kTol)) throw Error(ErrorCode::kNotHermitian, "density matrix");
  const double scale = std::max(max_abs(mat_), 1.0);
  const auto eig = herm_eigvals(mat_, Tolerances{kTol, kTol});
  if (eig.back() < -kTol * scale) {
    throw Error(ErrorCode::kNotPsd, "min eigenvalue " + std::to_string(eig.back()));
  }
  if (!unnormalized_ && std::abs(trace() - 1.0) > kTol) {
    throw Error(ErrorCode::kInvalidState, "trace " + std::to_string(trace()));
  }
}

DensityMatrix DensityMatrix::normalized() const {
  const double tr = trace();
  if (tr <= kProbabilityFloor) {
    throw Error(ErrorCode::kNegligibleProbability, "trace " + std::to_string(tr));
  }
  return DensityMatrix(mat_ / tr);
}

DensityMatrix partial_trace(const TripartitePureState& state, unsigned keep) {
  keep &= kSubsystemA | kSubsystemB | kSubsystemC;
  if (keep == 0) throw Error(ErrorCode::kEmptyKeepSet, "partial_trace");
  const std::array<int, 3> dims{TripartitePureState::kQubitDim, state.d_b(), state.d_c()};
  const std::array<unsigned, 3> flags{kSubsystemA, kSubsystemB, kSubsystemC};

  int kept_dim = 1;
  int traced_dim = 1;
  for (int s = 0; s < 3; ++s) ((keep & flags[s]) ? kept_dim : traced_dim) *= dims[s];

  // Reshape the amplitudes into kept x traced, then rho = Psi Psi^dagger.
  ComplexMatrix psi(kept_dim, traced_dim);
  for (int a = 0; a < dims[0]; ++a) {
    for (int b = 0; b < dims[1]; ++b) {
      for (int c = 0; c < dims[2]; ++c) {
        const std::array<int, 3> idx{a, b, c};
        int k = 0;
        int t = 0;
        for (int s = 0; s < 3; ++s) {
          if (keep & flags[s]) {
            k = k * dims[s] + idx[s];
          } else {
            t = t * dims[s] + idx[s];
          }
        }
        psi(k, t) = state.amp(a, b, c);
      }
    }
  }
  ComplexMatrix rho = psi * psi.adjoint();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

ConditionalBlocks conditional_blocks(const TripartitePureState& state) {
  const ComplexMatrix m0 = state.env_matrix(0);
  const ComplexMatrix m1 = state.env_matrix(1);
  const double p0 = m0.squaredNorm();
  const double p1 = m1.squaredNorm();
  // rho_C|k = Tr_B |phi_k><phi_k| = (M_k^dagger M_k)^T.
  return ConditionalBlocks{
      DensityMatrix(m0 * m0.adjoint(), true),
      DensityMatrix(m1 * m1.adjoint(), true),
      m0 * m1.adjoint(),
      DensityMatrix((m0.adjoint() * m0).transpose(), true),
      DensityMatrix((m1.adjoint() * m1).transpose(), true),
      p0,
      p1,
  };
}

ComplexMatrix assemble_ab(const ConditionalBlocks& blocks) {
  const Eigen::Index d = blocks.rho_b0.dim();
  ComplexMatrix out(2 * d, 2 * d);
  out.topLeftCorner(d, d) = blocks.rho_b0.mat();
  out.topRightCorner(d, d) = blocks.chi_b;
  out.bottomLeftCorner(d, d) = blocks.chi_b.adjoint();
  out.bottomRightCorner(d, d) = blocks.rho_b1.mat();
  return out;
}

BlochVector bloch(const DensityMatrix& rho) {
  require_qubit(rho);
  const ComplexMatrix& m = rho.mat();
  return BlochVector{2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(),
                     m(0, 0).real() - m(1, 1).real()};
}

double visibility(const DensityMatrix& rho) {
  const BlochVector r = bloch(rho);
  return std::hypot(r.x, r.y);
}

double predictability(const DensityMatrix& rho) { return std::abs(bloch(rho).z); }

const DensityMatrix& ConditionedQubit::state_or_throw() const {
  if (!state) {
    throw Error(ErrorCode::kNegligibleProbability, "p = " + std::to_string(probability));
  }
  return *state;
}

const ComplexVector& ProjectedQubit::qubit_or_throw() const {
  if (!qubit) {
    throw Error(ErrorCode::kNegligibleProbability, "P_s = " + std::to_string(probability));
  }
  return *qubit;
}

ComplexMatrix conditional_qubit_unnormalized(const TripartitePureState& state,
                                             const ComplexMatrix& pom_element) {
  if (pom_element.rows() != state.d_b() || pom_element.cols() != state.d_b()) {
    throw Error(ErrorCode::kInvalidPom, "POM element does not act on H_B");
  }
  // Entry (a, a') = Tr(pi M_a M_a'^dagger).
  std::array<ComplexMatrix, 2> m{state.env_matrix(0), state.env_matrix(1)};
  ComplexMatrix out(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int ap = 0; ap < 2; ++ap) out(a, ap) = (pom_element * m[a] * m[ap].adjoint()).trace();
  }
  return 0.5 * (out + out.adjoint());
}

ConditionedQubit conditional_qubit(const TripartitePureState& state,
                                   const ComplexMatrix& pom_element) {
  if (!is_hermitian(pom_element, DensityMatrix::kTol)) {
    throw Error(ErrorCode::kInvalidPom, "POM element is not Hermitian");
  }
  const auto eig = herm_eigvals(pom_element);
  if (eig.back() < -DensityMatrix::kTol || eig.front() > 1.0 + DensityMatrix::kTol) {
    throw Error(ErrorCode::kInvalidPom, "POM element must satisfy 0 <= pi <= 1");
  }
  const ComplexMatrix joint = conditional_qubit_unnormalized(state, pom_element);
  ConditionedQubit out;
  out.probability = real_trace(joint);
  if (out.probability > kProbabilityFloor) {
    out.state.emplace(joint / out.probability);
  }
  return out;
}

ProjectedQubit selective_projection(const TripartitePureState& state,
                                    const ComplexVector& env_vector) {
  if (env_vector.size() != state.env_dim()) {
    throw Error(ErrorCode::kInvalidState, "env vector dimension mismatch");
  }
  if (std::abs(env_vector.squaredNorm() - 1.0) > TripartitePureState::kNormTol) {
    throw Error(ErrorCode::kInvalidState, "env vector is not normalized");
  }
  const ComplexVector q = state.qubit_env_matrix() * env_vector.conjugate();
  ProjectedQubit out;
  out.probability = q.squaredNorm();
  if (out.probability > kProbabilityFloor) out.qubit = q / std::sqrt(out.probability);
  return out;
}

std::vector<double> qubit_schmidt_coefficients(const TripartitePureState& state) {
  Eigen::JacobiSVD<ComplexMatrix> svd(state.qubit_env_matrix());
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

TripartitePureState make_bell_ab(int d_b, int d_c) {
  ComplexVector amps = ComplexVector::Zero(4);
  amps[0] = amps[3] = 1.0 / std::sqrt(2.0);
  return TripartitePureState(2, 1, amps).embedded(d_b, d_c);
}

TripartitePureState make_ghz(int d_b, int d_c) {
  ComplexVector amps = ComplexVector::Zero(8);
  amps[0] = amps[7] = 1.0 / std::sqrt(2.0);
  return TripartitePureState(2, 2, amps).embedded(d_b, d_c);
}

TripartitePureState make_product(const ComplexVector& qubit, int d_b, int d_c,
                                 const ComplexVector& env) {
  if (qubit.size() != 2 || env.size() != d_b * d_c) {
    throw Error(ErrorCode::kInvalidState, "product factor dimension mismatch");
  }
  const ComplexVector q = qubit.normalized();
  const ComplexVector e = env.normalized();
  ComplexVector amps(2 * d_b * d_c);
  for (int a = 0; a < 2; ++a) amps.segment(a * e.size(), e.size()) = q[a] * e;
  return TripartitePureState::normalized(d_b, d_c, std::move(amps));
}

}  // namespace erasure
