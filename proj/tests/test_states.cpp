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

#include <catch_amalgamated.hpp>

#include <numbers>

#include "erasure/states.hpp"
#include "test_util.hpp"

using namespace erasure;
using namespace erasure_test;
using Catch::Matchers::WithinAbs;

namespace {

TripartitePureState random_state(int db, int dc, std::mt19937_64& gen) {
  return TripartitePureState(db, dc, random_unit(2 * db * dc, gen));
}

// Reduced state by explicit index sums over the full density matrix.
Mat naive_partial_trace(const TripartitePureState& s, unsigned keep) {
  const int dims[3] = {2, s.d_b(), s.d_c()};
  const Vec& psi = s.amps();
  const Mat rho = psi * psi.adjoint();
  std::vector<int> kept;
  for (int k = 0; k < 3; ++k)
    if (keep & (1u << k)) kept.push_back(k);
  int out_dim = 1;
  for (int k : kept) out_dim *= dims[k];
  Mat out = Mat::Zero(out_dim, out_dim);
  auto flat = [&](const int idx[3]) { return (idx[0] * dims[1] + idx[1]) * dims[2] + idx[2]; };
  auto reduced = [&](const int idx[3]) {
    int r = 0;
    for (int k : kept) r = r * dims[k] + idx[k];
    return r;
  };
  int i[3], j[3];
  for (i[0] = 0; i[0] < 2; ++i[0])
    for (i[1] = 0; i[1] < dims[1]; ++i[1])
      for (i[2] = 0; i[2] < dims[2]; ++i[2])
        for (j[0] = 0; j[0] < 2; ++j[0])
          for (j[1] = 0; j[1] < dims[1]; ++j[1])
            for (j[2] = 0; j[2] < dims[2]; ++j[2]) {
              bool traced_match = true;
              for (int k = 0; k < 3; ++k)
                if (!(keep & (1u << k)) && i[k] != j[k]) traced_match = false;
              if (traced_match) out(reduced(i), reduced(j)) += rho(flat(i), flat(j));
            }
  return out;
}

}  // namespace

TEST_CASE("partial trace agrees with explicit index sums", "[states]") {
  std::mt19937_64 gen(21);
  for (int db = 1; db <= 3; ++db) {
    for (int dc = 1; dc <= 3; ++dc) {
      const auto s = random_state(db, dc, gen);
      for (unsigned keep = 1; keep < 8; ++keep) {
        const DensityMatrix r = partial_trace(s, keep);
        CHECK((r.mat() - naive_partial_trace(s, keep)).norm() < 1e-13);
        CHECK_THAT(r.trace(), WithinAbs(1.0, 1e-12));
      }
    }
  }
  try {
    partial_trace(make_bell_ab(), 0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyKeepSet);
  }
}

TEST_CASE("conditional blocks reassemble rho_AB", "[states]") {
  std::mt19937_64 gen(22);
  for (int rep = 0; rep < 30; ++rep) {
    const auto s = random_state(1 + rep % 3, 1 + rep % 4, gen);
    const auto blocks = conditional_blocks(s);
    const Mat ab = naive_partial_trace(s, kSubsystemA | kSubsystemB);
    CHECK((assemble_ab(blocks) - ab).norm() < 1e-13);
    CHECK_THAT(blocks.p0 + blocks.p1, WithinAbs(1.0, 1e-12));
    CHECK_THAT(blocks.rho_c0.trace(), WithinAbs(blocks.p0, 1e-12));
    CHECK_THAT(blocks.rho_c1.trace(), WithinAbs(blocks.p1, 1e-12));
    // Sum of the conditional C operators is the reduced state of C.
    const Mat c = naive_partial_trace(s, kSubsystemC);
    CHECK((blocks.rho_c0.mat() + blocks.rho_c1.mat() - c).norm() < 1e-13);
  }
}

TEST_CASE("Bloch components and qubit invariants", "[states]") {
  Mat rho(2, 2);
  rho << 0.7, C(0.1, 0.2), C(0.1, -0.2), 0.3;
  const BlochVector b = bloch(DensityMatrix(rho));
  CHECK_THAT(b.x, WithinAbs(0.2, 1e-15));
  CHECK_THAT(b.y, WithinAbs(-0.4, 1e-15));
  CHECK_THAT(b.z, WithinAbs(0.4, 1e-15));
  CHECK_THAT(visibility(DensityMatrix(rho)), WithinAbs(std::sqrt(0.2), 1e-15));
  CHECK_THAT(predictability(DensityMatrix(rho)), WithinAbs(0.4, 1e-15));

  std::mt19937_64 gen(23);
  for (int rep = 0; rep < 100; ++rep) {
    const DensityMatrix q(random_density(2, 1 + rep % 2, gen));
    const double v = visibility(q), p = predictability(q);
    CHECK(v * v + p * p <= 1.0 + 1e-12);
    CHECK(v >= 0.0);
    CHECK(p >= 0.0);
  }
  try {
    bloch(DensityMatrix(Mat::Identity(3, 3) / 3.0));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kWrongDimension);
  }
}

TEST_CASE("conditioning on a POM element", "[states]") {
  std::mt19937_64 gen(24);
  for (int rep = 0; rep < 30; ++rep) {
    const int db = 2 + rep % 2, dc = 1 + rep % 3;
    const auto s = random_state(db, dc, gen);
    // 0 <= pi <= 1: a contraction of a random PSD.
    Mat g = random_matrix(db, db, gen);
    Mat pi = g.adjoint() * g;
    pi /= herm_eigvals(pi).front() * 1.5;
    const Mat full = kron(kron(Mat::Identity(2, 2), pi), Mat::Identity(dc, dc));
    const Vec& psi = s.amps();
    const Mat rho = psi * psi.adjoint();
    const Mat weighted = full * rho;
    // Tr_BC by index sums.
    Mat want = Mat::Zero(2, 2);
    const int env = db * dc;
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap)
        for (int e = 0; e < env; ++e) want(a, ap) += weighted(a * env + e, ap * env + e);
    CHECK((conditional_qubit_unnormalized(s, pi) - want).norm() < 1e-13);
    const ConditionedQubit q = conditional_qubit(s, pi);
    CHECK_THAT(q.probability, WithinAbs(want.trace().real(), 1e-13));
    REQUIRE(q.state.has_value());
    CHECK((q.state->mat() - want / want.trace().real()).norm() < 1e-12);
  }

  const auto s = make_bell_ab();
  Mat p1 = Mat::Zero(2, 2);
  p1(1, 1) = 1.0;
  Mat p0 = Mat::Zero(2, 2);
  p0(0, 0) = 1.0;
  const auto prod = make_product(Vec::Unit(2, 0), 2, 1, Vec::Unit(2, 0));
  const ConditionedQubit empty = conditional_qubit(prod, p1);
  CHECK(empty.probability == 0.0);
  CHECK_FALSE(empty.state.has_value());
  try {
    empty.state_or_throw();
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNegligibleProbability);
  }
  CHECK_THAT(conditional_qubit(s, p0).probability, WithinAbs(0.5, 1e-15));
  try {
    conditional_qubit(s, 2.0 * p0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidPom);
  }
}

TEST_CASE("selective projection", "[states]") {
  std::mt19937_64 gen(25);
  for (int rep = 0; rep < 30; ++rep) {
    const auto s = random_state(2, 2, gen);
    const Vec v = random_unit(4, gen);
    const ProjectedQubit pq = selective_projection(s, v);
    // Same event through the POM route with pi = |v><v| on B (x) C.
    const auto merged = s.merged_environment();
    const ConditionedQubit cq = conditional_qubit(merged, v * v.adjoint());
    CHECK_THAT(pq.probability, WithinAbs(cq.probability, 1e-13));
    const Vec& q = pq.qubit_or_throw();
    CHECK_THAT(q.norm(), WithinAbs(1.0, 1e-13));
    CHECK((q * q.adjoint() - cq.state_or_throw().mat()).norm() < 1e-12);
  }
  try {
    selective_projection(make_bell_ab(), Vec::Ones(2));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidState);
  }
}

TEST_CASE("Schmidt coefficients match the qubit spectrum", "[states]") {
  std::mt19937_64 gen(26);
  for (int rep = 0; rep < 30; ++rep) {
    const auto s = random_state(1 + rep % 3, 1 + rep % 2, gen);
    const auto sc = qubit_schmidt_coefficients(s);
    const auto ev = bisect_eigvals(naive_partial_trace(s, kSubsystemA));
    // Rank of the cut is at most min(2, d_B d_C).
    REQUIRE(sc.size() == static_cast<std::size_t>(std::min(2, s.env_dim())));
    for (std::size_t i = 0; i < sc.size(); ++i) CHECK_THAT(sc[i] * sc[i], WithinAbs(ev[i], 1e-10));
  }
  const auto bell = qubit_schmidt_coefficients(make_bell_ab());
  CHECK_THAT(bell[0], WithinAbs(std::numbers::sqrt2 / 2, 1e-15));
  CHECK_THAT(bell[1], WithinAbs(std::numbers::sqrt2 / 2, 1e-15));
}

TEST_CASE("embedding preserves reduced states", "[states]") {
  std::mt19937_64 gen(27);
  const auto s = random_state(2, 2, gen);
  const auto e = s.embedded(3, 4);
  CHECK(e.d_b() == 3);
  CHECK(e.d_c() == 4);
  CHECK((partial_trace(s, kSubsystemA).mat() - partial_trace(e, kSubsystemA).mat()).norm() < 1e-15);
  CHECK((s.env_matrix(1) - e.env_matrix(1).topLeftCorner(2, 2)).norm() == 0.0);
  try {
    s.embedded(1, 2);
    FAIL("expected throw");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kInvalidState);
  }
}

TEST_CASE("state construction validates norm and shape", "[states]") {
  Vec v = Vec::Ones(4);
  try {
    TripartitePureState(2, 1, v);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidState);
  }
  const auto n = TripartitePureState::normalized(2, 1, v);
  CHECK_THAT(n.amps().norm(), WithinAbs(1.0, 1e-15));
  try {
    TripartitePureState(2, 2, v / 2.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidState);
  }
  const auto m = make_bell_ab().merged_environment();
  CHECK(m.d_b() == 2);
  CHECK(m.d_c() == 1);
}

TEST_CASE("reference states", "[states]") {
  const auto bell = make_bell_ab();
  CHECK(visibility(partial_trace(bell, kSubsystemA)) < 1e-15);
  const auto ghz = make_ghz();
  const auto blocks = conditional_blocks(ghz);
  CHECK(blocks.chi_b.norm() < 1e-15);
  CHECK_THAT(blocks.p0, WithinAbs(0.5, 1e-15));
  Vec plus(2);
  plus << 1.0, 1.0;
  const auto prod = make_product(plus, 2, 3, Vec::Ones(6));
  CHECK_THAT(visibility(partial_trace(prod, kSubsystemA)), WithinAbs(1.0, 1e-14));
}

TEST_CASE("density matrix validation", "[states]") {
  Mat bad(2, 2);
  bad << 1.5, 0.0, 0.0, -0.5;
  try {
    DensityMatrix d(bad);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotPsd);
  }
  Mat half = Mat::Identity(2, 2) * 0.25;
  CHECK_THROWS_AS(DensityMatrix(half), Error);
  const DensityMatrix u(half, true);
  CHECK_THAT(u.normalized().trace(), WithinAbs(1.0, 1e-15));
  try {
    DensityMatrix(Mat::Zero(2, 2), true).normalized();
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNegligibleProbability);
  }
}
