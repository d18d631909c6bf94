// Copyright 2026 The csdsynth Authors
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

#include <doctest.h>

#include <bit>
#include <cmath>

#include "csdsynth/csd.hpp"

using namespace csdsynth;

namespace {

Matrix swap_matrix() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  return m;
}

}  // namespace

TEST_CASE("rightmost one") {
  const unsigned want[] = {3, 2, 3, 1, 3, 2, 3};
  for (unsigned i = 1; i <= 7; ++i) CHECK(rightmost_one(3, i) == want[i - 1]);
  for (unsigned n = 1; n <= 12; ++n) CHECK(rightmost_one(n, 1) == n);
  CHECK(rightmost_one(4, 8) == 1);
  CHECK(rightmost_one(5, 30) == 4);
  CHECK_THROWS(rightmost_one(3, 0));
  CHECK_THROWS(rightmost_one(3, 8));
}

TEST_CASE("rightmost one recursion identities, exhaustive") {
  for (unsigned n = 2; n <= 12; ++n) {
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    for (std::uint64_t i = 1; i < half; ++i) {
      const unsigned a = rightmost_one(n, i);
      REQUIRE(a == rightmost_one(n, i + half));
      REQUIRE(a == rightmost_one(n - 1, i) + 1);
      REQUIRE(a >= 2);
    }
    CHECK(rightmost_one(n, half) == 1);
    // Direct definition via the lowest set bit.
    CHECK(rightmost_one(n, (std::uint64_t{1} << n) - 2) == n - 1);
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); i += 37)
      CHECK(rightmost_one(n, i) ==
            n - static_cast<unsigned>(std::countr_zero(i)));
  }
}

TEST_CASE("cs_decompose identity and SWAP") {
  CsdTriple id = cs_decompose(UnitaryMatrix::identity(4));
  REQUIRE(id.thetas.size() == 2);
  CHECK(std::abs(id.thetas[0]) < 1e-12);
  CHECK(std::abs(id.thetas[1]) < 1e-12);
  CHECK(frobenius_norm(id.reconstruct() - identity_matrix(4)) < 1e-12);
  CHECK(frobenius_norm(id.V1 * id.W1 - identity_matrix(2)) < 1e-12);
  // The lower middle block is -C, so V2 W2 = -I.
  CHECK(frobenius_norm(id.V2 * id.W2 + identity_matrix(2)) < 1e-12);

  CsdTriple sw = cs_decompose(UnitaryMatrix(swap_matrix()));
  CHECK(frobenius_norm(sw.reconstruct() - swap_matrix()) < 1e-9);
}

TEST_CASE("cs_decompose random dim 8") {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    Matrix u = haar_unitary(8, rng);
    CsdTriple c = cs_decompose(UnitaryMatrix(u));
    CHECK(frobenius_norm(c.reconstruct() - u) < 1e-9);
    for (std::size_t i = 0; i < c.thetas.size(); ++i) {
      CHECK(c.thetas[i] >= 0.0);
      CHECK(c.thetas[i] <= M_PI / 2);
      if (i) CHECK(c.thetas[i] >= c.thetas[i - 1]);
    }
    for (const Matrix *m : {&c.V1, &c.V2, &c.W1, &c.W2})
      CHECK(unitarity_residual(*m) < 1e-10);
  }
}

TEST_CASE("cs_decompose rejects non-unitary input") {
  CHECK_THROWS_AS(cs_decompose(UnitaryMatrix(2.0 * identity_matrix(4), 10.0)),
                  NotUnitary);
}

TEST_CASE("recursive_csd structure") {
  auto id = recursive_csd(UnitaryMatrix::identity(4));
  REQUIRE(id.size() == 3);
  CHECK(id[0].target() == 1);
  CHECK(id[1].target() == 0);
  CHECK(id[2].target() == 1);
  // U_2 = D is Z on qubit 0 for every control value; U_1 U_3 = Z (x) I.
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  for (const Matrix &e : id[1].table()) CHECK(frobenius_norm(e - z) < 1e-12);
  CHECK(frobenius_norm(id[0].to_matrix() * id[2].to_matrix() -
                       tensor(z, identity_matrix(2))) < 1e-12);
  CHECK(frobenius_norm(product_of(id) - identity_matrix(4)) < 1e-12);
  // The middle factor of n = 2 targets qubit 1 and is indexed by the last.
  CHECK(id[1].controls() == std::vector<unsigned>{1});

  Rng rng(31);
  for (unsigned n = 2; n <= 5; ++n) {
    Matrix u = haar_unitary(std::size_t{1} << n, rng);
    auto mcus = recursive_csd(UnitaryMatrix(u));
    REQUIRE(mcus.size() == (std::size_t{1} << n) - 1);
    for (std::size_t i = 0; i < mcus.size(); ++i)
      CHECK(mcus[i].target() + 1 == rightmost_one(n, i + 1));
    CHECK(frobenius_norm(product_of(mcus) - u) < n * 1e-8);
  }
}

TEST_CASE("multi-controlled unitary matrix layout") {
  // Control qubit 1, target qubit 0: swaps the roles of the two qubits.
  Matrix x = gate_x();
  MultiControlledUnitary m(2, {0}, {identity_matrix(2), x});
  Matrix want = identity_matrix(4);
  want(1, 1) = want(3, 3) = 0;
  want(1, 3) = want(3, 1) = 1;
  CHECK(frobenius_norm(m.to_matrix() - want) < 1e-15);
  CHECK_THROWS(MultiControlledUnitary(2, {0}, {identity_matrix(2)}));
  CHECK_THROWS(MultiControlledUnitary(2, {2}, {x, x}));
}

TEST_CASE("group_blocks") {
  Rng rng(41);
  {
    auto mcus = recursive_csd(UnitaryMatrix(haar_unitary(8, rng)));
    BlockGrouping g = group_blocks(mcus, 1);
    CHECK(g.W.size() == 4);
    CHECK(g.U.size() == 3);
    g = group_blocks(mcus, 2);
    CHECK(g.W.size() == 2);
    REQUIRE(g.U.size() == 1);
    CHECK(g.U[0].target() == 0);
    CHECK_THROWS(group_blocks(mcus, 0));
    CHECK_THROWS(group_blocks(mcus, 3));
  }
  for (unsigned n = 3; n <= 5; ++n) {
    Matrix u = haar_unitary(std::size_t{1} << n, rng);
    auto mcus = recursive_csd(UnitaryMatrix(u));
    for (unsigned k = 1; k < n; ++k) {
      BlockGrouping g = group_blocks(mcus, k);
      Matrix p = g.W[0].to_matrix();
      for (std::size_t j = 0; j < g.U.size(); ++j) {
        CHECK(g.U[j].target() + 1 ==
              rightmost_one(n, (j + 1) << k));
        p = p * g.U[j].to_matrix() * g.W[j + 1].to_matrix();
      }
      for (const auto &w : g.W) {
        REQUIRE(w.targets().size() == k);
        for (unsigned t = 0; t < k; ++t) CHECK(w.targets()[t] == n - k + t);
      }
      CHECK(frobenius_norm(p - u) < std::ldexp(1e-8, n - k));
    }
  }
}
