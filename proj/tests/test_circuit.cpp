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

#include <string>

#include "csdsynth/circuit.hpp"
#include "csdsynth/circuit_io.hpp"
#include "csdsynth/simulate.hpp"

using namespace csdsynth;

namespace {

// Matrix of the gate on an n-qubit register, built column by column from
// the basis-state action (qubit 0 most significant).
Matrix permutation_ccx() {
  Matrix m = Matrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) m(i == 6 ? 7 : i == 7 ? 6 : i, i) = 1;
  return m;
}

Matrix controlled(const Matrix &u) {
  Matrix m = identity_matrix(4);
  m.block(2, 2, 2, 2) = u;
  return m;
}

Circuit random_circuit(std::size_t n, std::size_t gates, Rng &rng,
                       bool with_ct = true) {
  Circuit c(n, 0);
  std::uniform_int_distribution<unsigned> kind(0, kNumGateKinds - 1);
  std::uniform_int_distribution<Qubit> q(0, static_cast<Qubit>(n - 1));
  while (c.size() < gates) {
    GateKind k = static_cast<GateKind>(kind(rng));
    if (!with_ct && k == GateKind::CT) continue;
    Qubit a = q(rng), b = q(rng), d = q(rng);
    unsigned ar = gate_arity(k);
    if (ar >= 2 && a == b) continue;
    if (ar == 3 && (d == a || d == b)) continue;
    if (ar == 1) c.append(Gate(k, a));
    else if (ar == 2) c.append(Gate(k, a, b));
    else c.append(Gate(k, a, b, d));
  }
  return c;
}

}  // namespace

TEST_CASE("gate names round-trip") {
  for (unsigned i = 0; i < kNumGateKinds; ++i) {
    GateKind k = static_cast<GateKind>(i);
    CHECK(gate_kind_from_name(gate_name(k)) == k);
  }
  CHECK_THROWS_AS(gate_kind_from_name("toffoli"), InvalidInput);
}

TEST_CASE("t_count") {
  Circuit empty(2, 0);
  CHECK(t_count(empty) == 0);
  Circuit a(1, 0);
  a.t(0);
  a.append(Gate(GateKind::Tdg, 0));
  a.h(0);
  CHECK(t_count(a) == 2);
  Circuit b(3, 0);
  b.ccx(0, 1, 2);
  b.ccx(0, 1, 2);
  CHECK(t_count(b) == 14);
}

TEST_CASE("lowering of CX-only circuits is the identity map") {
  Circuit c(3, 0);
  c.cx(0, 1);
  c.cx(2, 0);
  Circuit l = lower_to_clifford_t(c);
  CHECK(l == c);
  CHECK(t_count(l) == 0);
}

TEST_CASE("lowered CCX is the Toffoli permutation") {
  Circuit c(3, 0);
  c.ccx(0, 1, 2);
  Circuit l = lower_to_clifford_t(c);
  CHECK(!contains_kind(l, GateKind::CCX));
  CHECK(t_count(l) == 7);
  CHECK(frobenius_norm(circuit_unitary(l) - permutation_ccx()) < 1e-12);
  CHECK(frobenius_norm(circuit_unitary(c) - permutation_ccx()) < 1e-12);
}

TEST_CASE("lowered CH is controlled-H") {
  Circuit c(2, 0);
  c.ch(0, 1);
  Circuit l = lower_to_clifford_t(c);
  CHECK(t_count(l) == 2);
  CHECK(frobenius_norm(circuit_unitary(l) - controlled(gate_h())) < 1e-12);
}

TEST_CASE("lowered CT acts as controlled-T with a clean scratch qubit") {
  Circuit c(2, 0);
  c.ct(0, 1);
  Circuit l = lower_to_clifford_t(c);
  CHECK(l.n_ancilla() == 1);
  CHECK(ancilla_count(c) == 1);
  RestrictedMatrix r = restricted_matrix(l);
  CHECK(frobenius_norm(r.matrix - controlled(gate_t())) < 1e-12);
  CHECK(r.leakage < 1e-12);
}

TEST_CASE("lowering preserves random circuits") {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    Circuit c = random_circuit(4, 30, rng, false);
    Circuit l = lower_to_clifford_t(c);
    for (const Gate &g : l.gates()) CHECK(is_primitive(g.kind));
    CHECK(t_count(l) == t_count(c));
    CHECK(frobenius_norm(circuit_unitary(l) - circuit_unitary(c)) < 1e-10);
  }
}

TEST_CASE("inverse") {
  Rng rng(4);
  Circuit c = random_circuit(3, 40, rng, false);
  Matrix u = circuit_unitary(c);
  Matrix ui = circuit_unitary(c.inverse());
  CHECK(frobenius_norm(ui * u - identity_matrix(8)) < 1e-10);
  Circuit ct(2, 0);
  ct.ct(0, 1);
  CHECK_THROWS(ct.inverse());
}

TEST_CASE("serialization") {
  CHECK(serialize(Circuit(0, 0)) == "data 0\nancilla 0\n");
  Circuit h = deserialize("data 1\nancilla 0\nh q0\n");
  Circuit expect(1, 0);
  expect.h(0);
  CHECK(h == expect);
  Circuit golden(2, 1);
  golden.h(0);
  golden.ccx(0, 1, 2);
  golden.ct(2, 1);
  CHECK(serialize(golden) ==
        "data 2\nancilla 1\nh q0\nccx q0 q1 q2\nct q2 q1\n");
  Rng rng(99);
  Circuit big = random_circuit(10, 1000, rng);
  CHECK(deserialize(serialize(big)) == big);
  CHECK(deserialize("# comment\n\ndata 1\nancilla 0\n\nx q0\n").size() == 1);
}

TEST_CASE("parse errors carry the line") {
  try {
    deserialize("data 2\nancilla 0\nh q0\nfoo q1\n");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(deserialize("data 1\nancilla 0\ncx q0 q0\n"), Error);
  CHECK_THROWS_AS(deserialize("data 1\nancilla 0\nh q3\n"), Error);
  CHECK_THROWS_AS(deserialize("ancilla 0\n"), Error);
}

TEST_CASE("cost report") {
  Circuit c(2, 1);
  c.ccx(0, 1, 2);
  c.ch(0, 1);
  CostReport r = cost_of(c, "stage");
  CHECK(r.t_count == 9);
  CHECK(r.ancilla_count == 1);
  REQUIRE(r.stages.size() == 1);
  CHECK(r.stages[0].name == "stage");
  CHECK(r.clifford_count == clifford_count(c));
}
