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

#include "erasure/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace erasure {
namespace {

std::atomic<std::uint64_t> g_clamp_count{0};

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kNonSquare, std::string(what) + ": " + std::to_string(m.rows()) +
                                           "x" + std::to_string(m.cols()));
  }
}

void require_hermitian(const ComplexMatrix& m, double tol, const char* what) {
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::kNotHermitian, what);
  }
}

// Symmetric polynomials of M^dagger M below this floor are indistinguishable
// from round-off in the power traces and are treated as exact zeros. The
// nested radicals take up to a fourth root of s_k, so leaving the noise in
// would cost ~1e-4 absolute error on rank-deficient inputs.
double noise_floor(double s1, int k, Eigen::Index n) {
  return 16.0 * static_cast<double>(n) * kEps * std::pow(s1, k);
}

double floor_clamp(double value, double floor) {
  if (value < floor) {
    if (value != 0.0) g_clamp_count.fetch_add(1, std::memory_order_relaxed);
    return 0.0;
  }
  return value;
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

double real_trace(const ComplexMatrix& m) { return m.trace().real(); }

std::uint64_t radicand_clamp_count() { return g_clamp_count.load(std::memory_order_relaxed); }

double clamp_radicand(double value) {
  if (value < 0.0) {
    g_clamp_count.fetch_add(1, std::memory_order_relaxed);
    return 0.0;
  }
  return value;
}

std::vector<double> herm_eigvals(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "herm_eigvals");
  require_hermitian(m, tol.hermitian, "herm_eigvals");
  const Eigen::Index n = m.rows();
  if (n == 1) return {m(0, 0).real()};
  if (n == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
    return {mean + radius, mean - radius};
  }
  // Symmetrize so the solver only ever sees an exactly Hermitian operand.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  out.resize(static_cast<std::size_t>(m.cols()), 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double trace_norm(const ComplexMatrix& m) {
  require_square(m, "trace_norm");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

std::vector<double> sym_polys_from_traces(const ComplexMatrix& m, int order,
                                          const Tolerances& tol) {
  if (order < 1 || order > 3) {
    throw Error(ErrorCode::kUnsupportedOrder, "order " + std::to_string(order));
  }
  require_square(m, "sym_polys_from_traces");
  require_hermitian(m, tol.hermitian, "sym_polys_from_traces");
  const double t1 = real_trace(m);
  std::vector<double> s{t1};
  if (order == 1) return s;
  const ComplexMatrix m2 = m * m;
  const double t2 = real_trace(m2);
  s.push_back(0.5 * (t1 * t1 - t2));
  if (order == 2) return s;
  const double t3 = (m2 * m).trace().real();
  s.push_back((t1 * t1 * t1 - 3.0 * t1 * t2 + 2.0 * t3) / 6.0);
  return s;
}

double trace_norm_newton_2(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw Error(ErrorCode::kWrongDimension, "trace_norm_newton_2 needs a 2x2 matrix");
  }
  const ComplexMatrix gram = m.adjoint() * m;
  const auto s = sym_polys_from_traces(gram, 2);
  const double s1 = s[0];
  const double s2 = floor_clamp(s[1], noise_floor(s1, 2, 2));
  return std::sqrt(s1 + 2.0 * std::sqrt(s2));
}

double trace_norm_newton_3(const ComplexMatrix& m) {
  if (m.rows() != 3 || m.cols() != 3) {
    throw Error(ErrorCode::kWrongDimension, "trace_norm_newton_3 needs a 3x3 matrix");
  }
  const ComplexMatrix gram = m.adjoint() * m;
  const auto s = sym_polys_from_traces(gram, 3);
  const double s1 = s[0];
  const double s2 = floor_clamp(s[1], noise_floor(s1, 2, 3));
  const double root_s3 = std::sqrt(floor_clamp(s[2], noise_floor(s1, 3, 3)));

  // The map is increasing and bounded on [sqrt(s1), sqrt(3 s1)]; starting
  // from the two-variable radical the iterates climb monotonically.
  double t = std::sqrt(s1 + 2.0 * std::sqrt(s2));
  for (int iter = 0; iter < kNewton3MaxIterations; ++iter) {
    const double inner = clamp_radicand(s2 + 2.0 * root_s3 * t);
    const double next = std::sqrt(s1 + 2.0 * std::sqrt(inner));
    if (std::abs(next - t) < kNewton3StepTol) return next;
    t = next;
  }
  throw Error(ErrorCode::kNoConvergence,
              "nested radical did not settle in " + std::to_string(kNewton3MaxIterations) +
                  " iterations");
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "matrix_sqrt_psd");
  require_hermitian(m, tol.hermitian, "matrix_sqrt_psd");
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  Eigen::VectorXd lambda = solver.eigenvalues();
  const double scale = max_abs(m);
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -tol.psd * scale) {
      throw Error(ErrorCode::kNotPsd, "eigenvalue " + std::to_string(lambda(i)));
    }
    lambda(i) = std::sqrt(std::max(lambda(i), 0.0));
  }
  const auto& v = solver.eigenvectors();
  return v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
}

}  // namespace erasure
