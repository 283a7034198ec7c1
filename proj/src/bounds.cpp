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

#include "erasure/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace erasure {
namespace {

void require_accessible_dim(const ConditionalBlocks& blocks, int expected, const char* what) {
  if (blocks.rho_b0.dim() != expected) {
    throw Error(ErrorCode::kWrongAccessibleDimension,
                std::string(what) + " needs d_B = " + std::to_string(expected) + ", got " +
                    std::to_string(blocks.rho_b0.dim()));
  }
}

void require_pom_dim(const ConditionalBlocks& blocks, const Pom& pom) {
  if (pom.dim() != blocks.rho_b0.dim()) {
    throw Error(ErrorCode::kInvalidPom, "POM acts on dim " + std::to_string(pom.dim()) +
                                            ", H_B has dim " +
                                            std::to_string(blocks.rho_b0.dim()));
  }
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

void require_hermitian_operand(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kNonSquare, "sub_fidelity operand");
  if (!is_hermitian(m)) throw Error(ErrorCode::kNotHermitian, "sub_fidelity operand");
}

// With s the singular values of a Gram factor G (G G^dagger ~ xy):
//   Tr(xy) = sum s_i^2,  Tr(xy)^2 - Tr(xyxy) = 2 sum_{i<j} s_i^2 s_j^2.
// Summing the products keeps full accuracy when xy is close to rank one,
// where the difference of traces would lose half the digits.
double sub_fidelity_from_singular_values(const std::vector<double>& s) {
  double tr = 0.0;
  double e2 = 0.0;
  for (double v : s) {
    const double v2 = v * v;
    e2 += v2 * tr;
    tr += v2;
  }
  return tr + 2.0 * std::sqrt(e2);
}

// Square root of a PSD operator whose eigenvalues at the solver's noise
// level are set to zero, so rank-deficient operands keep their rank.
ComplexMatrix psd_root(const ComplexMatrix& m) {
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  Eigen::VectorXd lambda = solver.eigenvalues();
  const double top = std::max(lambda.maxCoeff(), 0.0);
  const double floor = 16.0 * static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon() * top;
  const double scale = max_abs(m);
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -Tolerances{}.psd * scale) {
      throw Error(ErrorCode::kNotPsd, "eigenvalue " + std::to_string(lambda(i)));
    }
    lambda(i) = lambda(i) > floor ? std::sqrt(lambda(i)) : 0.0;
  }
  const auto& v = solver.eigenvectors();
  return v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
}

// Singular values of sqrt(x) sqrt(y); their squares are the spectrum of xy
// and their sum is the Uhlmann fidelity.
std::vector<double> fidelity_spectrum(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_hermitian_operand(x);
  require_hermitian_operand(y);
  return singular_values(psd_root(x) * psd_root(y));
}

}  // namespace

Pom::Pom(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorCode::kInvalidPom, "no elements");
  const Eigen::Index d = elements_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : elements_) {
    if (e.rows() != d || e.cols() != d) {
      throw Error(ErrorCode::kInvalidPom, "elements differ in dimension");
    }
    if (!is_hermitian(e, kTol)) throw Error(ErrorCode::kInvalidPom, "element not Hermitian");
    if (herm_eigvals(e, Tolerances{kTol, kTol}).back() < -kTol) {
      throw Error(ErrorCode::kInvalidPom, "element not PSD");
    }
    sum += e;
  }
  const double dev = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > kTol) {
    throw Error(ErrorCode::kInvalidPom, "elements sum to identity only within " +
                                            std::to_string(dev));
  }
}

Pom Pom::from_basis(const ComplexMatrix& unitary) {
  std::vector<ComplexMatrix> elements;
  for (Eigen::Index k = 0; k < unitary.cols(); ++k) {
    const ComplexVector u = unitary.col(k);
    elements.push_back(u * u.adjoint());
  }
  return Pom(std::move(elements));
}

Pom Pom::trivial(int dim) { return Pom({ComplexMatrix::Identity(dim, dim)}); }

double avg_visibility(const ConditionalBlocks& blocks, const Pom& pom) {
  require_pom_dim(blocks, pom);
  double total = 0.0;
  for (const auto& pi : pom.elements()) total += 2.0 * std::abs((pi * blocks.chi_b).trace());
  return total;
}

double avg_visibility(const TripartitePureState& state, const Pom& pom) {
  return avg_visibility(conditional_blocks(state), pom);
}

double avg_predictability(const ConditionalBlocks& blocks, const Pom& pom) {
  require_pom_dim(blocks, pom);
  const ComplexMatrix diff = blocks.rho_b0.mat() - blocks.rho_b1.mat();
  double total = 0.0;
  for (const auto& pi : pom.elements()) total += std::abs((pi * diff).trace().real());
  return total;
}

double avg_predictability(const TripartitePureState& state, const Pom& pom) {
  return avg_predictability(conditional_blocks(state), pom);
}

double sub_fidelity(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "sub_fidelity operands differ in shape");
  }
  return sub_fidelity_from_singular_values(fidelity_spectrum(x, y));
}

double sub_fidelity(const DensityMatrix& x, const DensityMatrix& y) {
  return sub_fidelity(x.mat(), y.mat());
}

double sub_fidelity_factored(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "factors act on different spaces");
  }
  const ComplexMatrix g = a * b.adjoint();
  if (g.rows() == 2 && g.cols() == 2) {
    // One 2x2 minor: sum_{i<j} s_i^2 s_j^2 = |det G|^2.
    const double det = std::abs(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0));
    return g.squaredNorm() + 2.0 * det;
  }
  return sub_fidelity_from_singular_values(singular_values(g));
}

double uhlmann_fidelity(const DensityMatrix& x, const DensityMatrix& y) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "uhlmann_fidelity operands differ in dim");
  }
  double f = 0.0;
  for (double s : fidelity_spectrum(x.mat(), y.mat())) f += s;
  return f;
}

double coherence_bound(const ConditionalBlocks& blocks) { return 2.0 * trace_norm(blocks.chi_b); }

double coherence_bound(const TripartitePureState& state) {
  return coherence_bound(conditional_blocks(state));
}

double coherence_bound_subfidelity(const ConditionalBlocks& blocks) {
  require_accessible_dim(blocks, 2, "coherence_bound_subfidelity");
  return 2.0 * std::sqrt(clamp_radicand(sub_fidelity(blocks.rho_c0, blocks.rho_c1)));
}

double coherence_bound_subfidelity(const TripartitePureState& state) {
  if (state.d_b() != 2) {
    throw Error(ErrorCode::kWrongAccessibleDimension, "coherence_bound_subfidelity needs d_B = 2");
  }
  return coherence_bound_subfidelity(conditional_blocks(state));
}

double coherence_bound_dim3(const ConditionalBlocks& blocks) {
  require_accessible_dim(blocks, 3, "coherence_bound_dim3");
  return 2.0 * trace_norm_newton_3(blocks.chi_b);
}

double coherence_bound_dim3(const TripartitePureState& state) {
  if (state.d_b() != 3) {
    throw Error(ErrorCode::kWrongAccessibleDimension, "coherence_bound_dim3 needs d_B = 3");
  }
  return coherence_bound_dim3(conditional_blocks(state));
}

double distinguishability_bound(const ConditionalBlocks& blocks) {
  return trace_norm(blocks.rho_b0.mat() - blocks.rho_b1.mat());
}

double distinguishability_bound(const TripartitePureState& state) {
  return distinguishability_bound(conditional_blocks(state));
}

double distinguishability_bound_piecewise(const ConditionalBlocks& blocks) {
  require_accessible_dim(blocks, 2, "distinguishability_bound_piecewise");
  const ComplexMatrix x = blocks.rho_b0.mat() - blocks.rho_b1.mat();
  const double tr = real_trace(x);
  const double tr_sq = real_trace(x * x);
  const double tr2 = tr * tr;
  const double d2 = tr_sq >= tr2 ? 2.0 * tr_sq - tr2 : tr2;
  return std::sqrt(clamp_radicand(d2));
}

BoundReport full_bounds(const TripartitePureState& state) {
  const DensityMatrix qubit = partial_trace(state, kSubsystemA);
  const ConditionalBlocks blocks = conditional_blocks(state);
  const ConditionalBlocks whole = conditional_blocks(state.merged_environment());
  return BoundReport{
      clamp_unit(visibility(qubit)),           clamp_unit(predictability(qubit)),
      clamp_unit(coherence_bound(blocks)),     clamp_unit(distinguishability_bound(blocks)),
      clamp_unit(coherence_bound(whole)),      clamp_unit(distinguishability_bound(whole)),
  };
}

}  // namespace erasure
