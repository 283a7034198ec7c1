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

#include <array>
#include <cstdint>
#include <limits>

#include "erasure/bounds.hpp"
#include "erasure/states.hpp"

namespace erasure {

/// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// Identifies one independent random stream: the master seed keys the
/// cipher, the stream index occupies the high counter words.
struct SeededStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

/// Sequential view over a SeededStream starting at a given 128-bit block.
/// Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(SeededStream stream, std::uint64_t first_block = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();

  /// Complex Gaussian with mean 0 and E|z|^2 = 1 (variance 1/2 per part),
  /// by Box-Muller.
  Complex complex_normal();

 private:
  void refill();

  Philox4x32::Key key_;
  std::uint64_t stream_index_;
  std::uint64_t block_;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
};

/// m x n matrix of independent complex_normal draws, filled row by row.
ComplexMatrix ginibre(int m, int n, Rng& rng);

/// mu^dagger mu / Tr(mu^dagger mu) with mu = ginibre(env_dim, n): the
/// distribution of an n-dimensional marginal of a uniformly random pure
/// state on C^n (x) C^env_dim. A degenerate draw is retried once, then
/// kDegenerateDraw.
DensityMatrix induced_density(int n, int env_dim, Rng& rng);

/// Uniformly distributed unit vector in C^d.
ComplexVector haar_pure(int d, Rng& rng);

/// Uniformly random tripartite state of dims (2, d_b, d_c).
TripartitePureState random_tripartite(int d_b, int d_c, Rng& rng);

/// Haar-random element of SU(2): [[a, -conj(b)], [b, conj(a)]] with (a, b)
/// uniform on the 3-sphere.
ComplexMatrix haar_su2(Rng& rng);

/// Haar-random element of U(d).
ComplexMatrix haar_unitary(int d, Rng& rng);

/// Random POM with `outcomes` elements: G_k^dagger G_k conjugated by
/// S^{-1/2}, S = sum_k G_k^dagger G_k, for Ginibre G_k.
Pom random_pom(int dim, int outcomes, Rng& rng);

/// Density of one eigenvalue of a qubit marginal under the induced measure
/// with a traced environment of dimension env_dim >= 2:
///   Gamma(2K) / (2 Gamma(K) Gamma(K-1)) (lambda - lambda^2)^(K-2) (2 lambda - 1)^2.
/// Throws kUnsupportedK for env_dim < 2.
double eig_pdf_trace(int env_dim, double lambda);

/// Integral of eig_pdf_trace over [a, b] by adaptive Gauss-Kronrod.
double eig_pdf_trace_integral(int env_dim, double a, double b);

}  // namespace erasure
