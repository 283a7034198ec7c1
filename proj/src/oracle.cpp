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

#include "erasure/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace erasure {
namespace {

using Objective = std::function<double(const std::vector<double>&)>;

// Multi-start compass search: try +-step along every coordinate, accept any
// strict improvement, halve the step after a sweep without one.
OptimizationTrace compass_search(const Objective& f, int dim, int budget, SeededStream stream,
                                 const SearchOptions& options) {
  Rng rng(stream);
  OptimizationTrace trace;
  trace.best_value = -std::numeric_limits<double>::infinity();
  bool all_converged = true;

  std::vector<std::pair<double, std::vector<double>>> starts;
  const int probes = std::max(options.probes, options.restarts);
  for (int i = 0; i < probes; ++i) {
    std::vector<double> x(static_cast<std::size_t>(dim));
    for (auto& v : x) v = 2.0 * std::numbers::pi * rng.uniform();
    const double fx = f(x);
    starts.emplace_back(fx, std::move(x));
  }
  const auto keep = static_cast<std::ptrdiff_t>(std::min<std::size_t>(options.restarts, starts.size()));
  std::partial_sort(starts.begin(), starts.begin() + keep, starts.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  starts.resize(static_cast<std::size_t>(keep));

  for (auto& [fx, x] : starts) {
    double step = options.initial_step;
    bool converged = false;

    for (int iter = 0; iter < budget; ++iter) {
      bool improved = false;
      for (int i = 0; i < dim; ++i) {
        for (double sign : {1.0, -1.0}) {
          std::vector<double> trial = x;
          trial[static_cast<std::size_t>(i)] += sign * step;
          const double ft = f(trial);
          if (ft > fx) {
            x = std::move(trial);
            fx = ft;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
      ++trace.iterations;
      if (fx > trace.best_value) {
        trace.best_value = fx;
        trace.best_parameters = x;
      }
      trace.history.push_back(trace.best_value);
      if (step < options.step_tol) {
        converged = true;
        break;
      }
    }
    all_converged = all_converged && converged;
  }
  trace.converged = all_converged;
  return trace;
}

void require_search_dim(const TripartitePureState& state) {
  if (state.d_b() != 2 && state.d_b() != 3) {
    throw Error(ErrorCode::kWrongAccessibleDimension, "projective search supports d_B in {2, 3}");
  }
}

// sum_k |<u_k| X |u_k>| over the columns of U.
double diagonal_abs_sum(const ComplexMatrix& u, const ComplexMatrix& x) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    total += std::abs(u.col(k).dot(x * u.col(k)));
  }
  return total;
}

}  // namespace

int basis_angle_count(int d) { return d * d - 1; }

ComplexMatrix basis_from_angles(int d, const std::vector<double>& angles) {
  if (static_cast<int>(angles.size()) != basis_angle_count(d)) {
    throw Error(ErrorCode::kWrongDimension, "expected d^2 - 1 angles");
  }
  std::size_t next = 0;
  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  for (int i = 1; i < d; ++i) u(i, i) = std::polar(1.0, angles[next++]);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double theta = angles[next++];
      const double phi = angles[next++];
      ComplexMatrix g = ComplexMatrix::Identity(d, d);
      g(i, i) = std::cos(theta);
      g(j, j) = std::cos(theta);
      g(i, j) = -std::polar(std::sin(theta), -phi);
      g(j, i) = std::polar(std::sin(theta), phi);
      u = u * g;
    }
  }
  return u;
}

OptimizationTrace optimize_erasure_projective(const TripartitePureState& state, int budget,
                                              SeededStream stream, const SearchOptions& options) {
  require_search_dim(state);
  const ConditionalBlocks blocks = naive_conditional_blocks(state);
  const int d = state.d_b();
  auto objective = [&](const std::vector<double>& angles) {
    return 2.0 * diagonal_abs_sum(basis_from_angles(d, angles), blocks.chi_b);
  };
  return compass_search(objective, basis_angle_count(d), budget, stream, options);
}

OptimizationTrace optimize_which_alternative_projective(const TripartitePureState& state,
                                                        int budget, SeededStream stream,
                                                        const SearchOptions& options) {
  require_search_dim(state);
  const ConditionalBlocks blocks = naive_conditional_blocks(state);
  const ComplexMatrix diff = blocks.rho_b0.mat() - blocks.rho_b1.mat();
  const int d = state.d_b();
  auto objective = [&](const std::vector<double>& angles) {
    return diagonal_abs_sum(basis_from_angles(d, angles), diff);
  };
  return compass_search(objective, basis_angle_count(d), budget, stream, options);
}

ConditionalBlocks naive_conditional_blocks(const TripartitePureState& state) {
  const int db = state.d_b();
  const int dc = state.d_c();
  ComplexMatrix rb[2] = {ComplexMatrix::Zero(db, db), ComplexMatrix::Zero(db, db)};
  ComplexMatrix rc[2] = {ComplexMatrix::Zero(dc, dc), ComplexMatrix::Zero(dc, dc)};
  ComplexMatrix chi = ComplexMatrix::Zero(db, db);

  // rho_B|k[b, b'] = sum_c psi(k, b, c) conj(psi(k, b', c))
  // rho_C|k[c, c'] = sum_b psi(k, b, c) conj(psi(k, b, c'))
  // chi_B[b, b']   = sum_c psi(0, b, c) conj(psi(1, b', c))
  for (int k = 0; k < 2; ++k) {
    for (int b = 0; b < db; ++b) {
      for (int bp = 0; bp < db; ++bp) {
        for (int c = 0; c < dc; ++c) {
          rb[k](b, bp) += state.amp(k, b, c) * std::conj(state.amp(k, bp, c));
        }
      }
    }
    for (int c = 0; c < dc; ++c) {
      for (int cp = 0; cp < dc; ++cp) {
        for (int b = 0; b < db; ++b) {
          rc[k](c, cp) += state.amp(k, b, c) * std::conj(state.amp(k, b, cp));
        }
      }
    }
  }
  for (int b = 0; b < db; ++b) {
    for (int bp = 0; bp < db; ++bp) {
      for (int c = 0; c < dc; ++c) chi(b, bp) += state.amp(0, b, c) * std::conj(state.amp(1, bp, c));
    }
  }
  const double p0 = real_trace(rb[0]);
  const double p1 = real_trace(rb[1]);
  return ConditionalBlocks{DensityMatrix(rb[0], true), DensityMatrix(rb[1], true), chi,
                           DensityMatrix(rc[0], true), DensityMatrix(rc[1], true), p0, p1};
}

ReachabilityResult reachability_search(const TripartitePureState& state,
                                       const ComplexVector& target, int budget,
                                       SeededStream stream, const SearchOptions& options) {
  if (target.size() != 2 || std::abs(target.squaredNorm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::kInvalidState, "target must be a normalized qubit vector");
  }
  const auto schmidt = qubit_schmidt_coefficients(state);
  if (schmidt.size() < 2 || schmidt[1] <= 1e-10) {
    throw Error(ErrorCode::kProductState, "A is not entangled with its environment");
  }
  const int env = state.env_dim();

  auto to_vector = [env](const std::vector<double>& params) {
    ComplexVector v(env);
    for (int e = 0; e < env; ++e) v[e] = Complex(params[2 * e], params[2 * e + 1]);
    return v;
  };
  auto objective = [&](const std::vector<double>& params) {
    const ComplexVector v = to_vector(params);
    const double norm = v.norm();
    if (!(norm > 0.0)) return 0.0;
    const ProjectedQubit out = selective_projection(state, v / norm);
    if (!out.qubit) return 0.0;
    return std::norm(target.dot(*out.qubit));
  };

  ReachabilityResult result;
  result.trace = compass_search(objective, 2 * env, budget, stream, options);
  result.env_vector = to_vector(result.trace.best_parameters).normalized();
  result.success_probability = selective_projection(state, result.env_vector).probability;
  return result;
}

}  // namespace erasure
