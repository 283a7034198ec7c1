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

#include "erasure/sampling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace erasure {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

constexpr double kDegenerateTrace = 1e-100;

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

Rng::Rng(SeededStream stream, std::uint64_t first_block)
    : key_{static_cast<std::uint32_t>(stream.master_seed),
           static_cast<std::uint32_t>(stream.master_seed >> 32)},
      stream_index_(stream.stream_index),
      block_(first_block) {}

void Rng::refill() {
  buffer_ = Philox4x32::block({static_cast<std::uint32_t>(block_),
                               static_cast<std::uint32_t>(block_ >> 32),
                               static_cast<std::uint32_t>(stream_index_),
                               static_cast<std::uint32_t>(stream_index_ >> 32)},
                              key_);
  ++block_;
  used_ = 0;
}

Rng::result_type Rng::operator()() {
  if (used_ > 2) refill();
  const std::uint64_t lo = buffer_[used_];
  const std::uint64_t hi = buffer_[used_ + 1];
  used_ += 2;
  return (hi << 32) | lo;
}

double Rng::uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

Complex Rng::complex_normal() {
  const double radius = std::sqrt(-std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

ComplexMatrix ginibre(int m, int n, Rng& rng) {
  ComplexMatrix out(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = rng.complex_normal();
  }
  return out;
}

DensityMatrix induced_density(int n, int env_dim, Rng& rng) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    const ComplexMatrix mu = ginibre(env_dim, n, rng);
    ComplexMatrix gram = mu.adjoint() * mu;
    const double tr = real_trace(gram);
    if (tr < kDegenerateTrace) continue;
    gram = (0.5 / tr) * (gram + gram.adjoint()).eval();
    return DensityMatrix(std::move(gram));
  }
  throw Error(ErrorCode::kDegenerateDraw, "Ginibre draw with vanishing trace");
}

ComplexVector haar_pure(int d, Rng& rng) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.complex_normal();
    const double norm2 = v.squaredNorm();
    if (norm2 < kDegenerateTrace) continue;
    return v / std::sqrt(norm2);
  }
  throw Error(ErrorCode::kDegenerateDraw, "Gaussian vector with vanishing norm");
}

TripartitePureState random_tripartite(int d_b, int d_c, Rng& rng) {
  return TripartitePureState::normalized(d_b, d_c, haar_pure(2 * d_b * d_c, rng));
}

ComplexMatrix haar_su2(Rng& rng) {
  const ComplexVector v = haar_pure(2, rng);
  ComplexMatrix u(2, 2);
  u << v[0], -std::conj(v[1]), v[1], std::conj(v[0]);
  return u;
}

ComplexMatrix haar_unitary(int d, Rng& rng) {
  // QR of a Ginibre matrix with the phases of R's diagonal moved into Q.
  const ComplexMatrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Pom random_pom(int dim, int outcomes, Rng& rng) {
  std::vector<ComplexMatrix> raw;
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < outcomes; ++k) {
    const ComplexMatrix g = ginibre(dim, dim, rng);
    raw.push_back(g.adjoint() * g);
    sum += raw.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (sum + sum.adjoint()));
  const ComplexMatrix inv_sqrt = solver.operatorInverseSqrt();
  std::vector<ComplexMatrix> elements;
  for (const auto& e : raw) {
    ComplexMatrix pi = inv_sqrt * e * inv_sqrt;
    elements.push_back(0.5 * (pi + pi.adjoint()));
  }
  return Pom(std::move(elements));
}

double eig_pdf_trace(int env_dim, double lambda) {
  if (env_dim < 2) {
    throw Error(ErrorCode::kUnsupportedK,
                "eigenvalue density needs env_dim >= 2, got " + std::to_string(env_dim));
  }
  if (lambda < 0.0 || lambda > 1.0) return 0.0;
  const double k = env_dim;
  const double log_norm =
      std::lgamma(2.0 * k) - std::log(2.0) - std::lgamma(k) - std::lgamma(k - 1.0);
  const double spread = (2.0 * lambda - 1.0) * (2.0 * lambda - 1.0);
  if (env_dim == 2) return std::exp(log_norm) * spread;
  const double base = lambda - lambda * lambda;
  if (base <= 0.0) return 0.0;
  return std::exp(log_norm + (k - 2.0) * std::log(base)) * spread;
}

double eig_pdf_trace_integral(int env_dim, double a, double b) {
  eig_pdf_trace(env_dim, 0.5);  // validates env_dim
  auto f = [env_dim](double x) { return eig_pdf_trace(env_dim, x); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-14);
}

}  // namespace erasure
