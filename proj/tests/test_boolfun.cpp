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

#include "csdsynth/boolfun.hpp"
#include "csdsynth/simulate.hpp"

using namespace csdsynth;

namespace {

// Runs a permutation circuit on a basis input given as bits per qubit.
std::vector<bool> run_classical(const Circuit &c, std::vector<bool> bits) {
  bits.resize(c.num_qubits(), false);
  SparseState s(c.num_qubits(), bits);
  s.apply(c);
  REQUIRE(s.size() == 1);
  CHECK(std::abs(std::abs(s.amplitude(0)) - 1.0) < 1e-12);
  std::vector<bool> out(c.num_qubits());
  for (std::size_t q = 0; q < out.size(); ++q) out[q] = s.bit(0, q);
  return out;
}

std::vector<bool> input_bits(unsigned n, std::uint64_t x) {
  std::vector<bool> b(n);
  for (unsigned i = 0; i < n; ++i) b[i] = (x >> (n - 1 - i)) & 1u;
  return b;
}

void check_oracle(const TruthTable &t, OracleBackend backend,
                  unsigned y_samples, Rng &rng) {
  const Circuit c = synthesize_oracle(t, backend);
  const unsigned n = t.n_vars(), r = t.r_out();
  REQUIRE(c.n_data() == n + r);
  std::uniform_int_distribution<std::uint64_t> ys(0, (1u << r) - 1);
  for (std::uint64_t x = 0; x < t.rows(); ++x) {
    for (unsigned k = 0; k < y_samples; ++k) {
      const std::uint64_t y = y_samples >= (1u << r) ? k : ys(rng);
      std::vector<bool> in = input_bits(n, x);
      for (unsigned o = 0; o < r; ++o) in.push_back((y >> o) & 1u);
      const std::vector<bool> out = run_classical(c, in);
      for (unsigned i = 0; i < n; ++i) REQUIRE(out[i] == in[i]);
      for (unsigned o = 0; o < r; ++o)
        REQUIRE(out[n + o] == (((y >> o) & 1u) != t.get(x, o)));
      for (std::size_t q = n + r; q < out.size(); ++q) REQUIRE(!out[q]);
    }
  }
}

}  // namespace

TEST_CASE("truth tables") {
  TruthTable t = random_truth_table(5, 3, 1);
  CHECK(parse_truth_table(truth_table_to_text(t)) == t);
  CHECK(parse_truth_table("tt 1 2\n0\n3\n").get(1, 1));
  CHECK_THROWS(parse_truth_table("tt 2 1\n0\n1\n"));
  CHECK_THROWS(parse_truth_table("tt 1 1\n0\n4\n"));
  CHECK_THROWS(TruthTable(kMaxTruthTableVars + 1, 1));
}

TEST_CASE("ANF") {
  CHECK(anf_from_truth_table(TruthTable(4, 1)).empty());
  TruthTable x(3, 1);
  for (std::uint64_t i = 0; i < 8; ++i) x.set(i, 0, std::popcount(i) & 1);
  CHECK(anf_from_truth_table(x).monomials() ==
        std::vector<std::uint64_t>{1, 2, 4});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    TruthTable t = random_truth_table(8, 1, seed);
    AnfPolynomial p = anf_from_truth_table(t);
    for (std::uint64_t i = 0; i < t.rows(); ++i)
      REQUIRE(p.evaluate(i) == t.get(i, 0));
    CHECK(p.to_truth_table() == t);
  }
  AnfPolynomial q(3, {0b101});
  CHECK(q.depends_on(0));
  CHECK(!q.depends_on(1));
  CHECK(q.depends_on(2));
}

TEST_CASE("factor_anf") {
  // No variable among the first k: one term with b = 0.
  AnfPolynomial p(4, {0b0011, 0b0001, 0});
  FactoredAnf f = factor_anf(p, 2);
  REQUIRE(f.terms.size() == 1);
  CHECK(f.terms.begin()->first == 0);
  CHECK(f.terms.begin()->second == AnfPolynomial(2, {0, 1, 3}));
  // x1 x3 on three variables at k = 2: b = 10, g = x3.
  FactoredAnf g = factor_anf(AnfPolynomial(3, {0b101}), 2);
  REQUIRE(g.terms.size() == 1);
  CHECK(g.terms.begin()->first == 0b10);
  CHECK(g.terms.begin()->second == AnfPolynomial(1, {1}));
  for (unsigned n = 1; n <= 10; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      AnfPolynomial r = anf_from_truth_table(random_truth_table(n, 1, n * 31 + k));
      FactoredAnf h = factor_anf(r, k);
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
        REQUIRE(h.evaluate(x) == r.evaluate(x));
    }
  }
}

TEST_CASE("monomial circuit") {
  CHECK(monomial_circuit(2).size() == 1);
  CHECK(monomial_circuit(3).size() == 4);
  for (unsigned n = 2; n <= 12; ++n) {
    Circuit c = monomial_circuit(n);
    CHECK(c.size() == (std::size_t{1} << n) - n - 1);
    for (const Gate &g : c.gates()) CHECK(g.kind == GateKind::CCX);
    CHECK(monomial_order(n).size() == c.size());
  }
  for (unsigned n = 2; n <= 5; ++n) {
    const Circuit c = monomial_circuit(n);
    const auto order = monomial_order(n);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      std::vector<bool> in = input_bits(n, x);
      std::vector<bool> out = run_classical(c, in);
      for (std::size_t m = 0; m < order.size(); ++m) {
        bool v = true;
        for (unsigned var : order[m]) v = v && in[var];
        REQUIRE(out[n + m] == v);
      }
    }
  }
}

TEST_CASE("oracle examples") {
  CHECK(synthesize_oracle(TruthTable(3, 2), OracleBackend::Naive).size() == 0);
  CHECK(synthesize_oracle(TruthTable(3, 2), OracleBackend::SelectSwap).size() ==
        0);
  TruthTable wire(1, 1);
  wire.set(1, 0, true);
  Circuit c = synthesize_oracle(wire, OracleBackend::Naive);
  REQUIRE(c.size() == 1);
  CHECK(c.gates()[0] == Gate(GateKind::CX, 0, 1));
  CHECK(oracle_backend_from_name("select_swap") == OracleBackend::SelectSwap);
  CHECK_THROWS(oracle_backend_from_name("qrom"));
}

TEST_CASE("oracles are exact on all inputs") {
  Rng rng(12);
  for (OracleBackend b : {OracleBackend::Naive, OracleBackend::SelectSwap}) {
    for (unsigned n = 1; n <= 5; ++n)
      for (unsigned r = 1; r <= 4; ++r)
        check_oracle(random_truth_table(n, r, 100 * n + r), b, 1u << r, rng);
    check_oracle(random_truth_table(6, 4, 7), b, 16, rng);
  }
}

TEST_CASE("naive oracle scratch and involution") {
  Rng rng(13);
  for (unsigned n = 2; n <= 6; ++n) {
    TruthTable t = random_truth_table(n, 2, n);
    Circuit c = synthesize_oracle(t, OracleBackend::Naive);
    CHECK(c.n_ancilla() <= n);
    Circuit twice = c;
    twice.append_gates(c.gates());
    for (std::uint64_t x = 0; x < t.rows(); ++x) {
      std::vector<bool> in = input_bits(n, x);
      in.push_back(x & 1);
      in.push_back(false);
      std::vector<bool> out = run_classical(twice, in);
      for (std::size_t q = 0; q < in.size(); ++q) REQUIRE(out[q] == in[q]);
    }
  }
}

TEST_CASE("select-swap cost model") {
  for (unsigned n = 2; n <= 14; ++n) {
    const unsigned s = select_swap_split(n, 4);
    CHECK(s <= n);
    for (unsigned other = 0; other <= n; ++other)
      CHECK(select_swap_t_model(n, 4, s) <= select_swap_t_model(n, 4, other));
  }
  for (unsigned n = 4; n <= 10; ++n) {
    TruthTable t = random_truth_table(n, 4, n);
    Circuit c = synthesize_oracle(t, OracleBackend::SelectSwap);
    CHECK(t_count(c) <= select_swap_t_model(n, 4, select_swap_split(n, 4)));
  }
}
