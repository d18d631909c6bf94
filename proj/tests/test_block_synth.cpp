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

#include <cmath>
#include <map>

#include "csdsynth/block_synth.hpp"
#include "csdsynth/simulate.hpp"

using namespace csdsynth;

namespace {

const WordTable &table(unsigned depth) {
  static std::map<unsigned, WordTable> cache;
  auto it = cache.find(depth);
  if (it == cache.end())
    it = cache.emplace(depth, load_or_build_word_table(depth)).first;
  return it->second;
}

const WordSearcher &searcher(unsigned depth) {
  static std::map<unsigned, WordSearcher> cache;
  auto it = cache.find(depth);
  if (it == cache.end()) it = cache.emplace(depth, WordSearcher(table(depth))).first;
  return it->second;
}

Matrix factor_matrix(const ControlledSu2Factor &f, unsigned n) {
  return MultiControlledUnitary(n, {f.target}, f.table).to_matrix();
}

Matrix block_matrix(const std::vector<ControlledSu2Factor> &fs, unsigned n) {
  Matrix m = identity_matrix(std::size_t{1} << n);
  for (const auto &f : fs) m = m * factor_matrix(f, n);
  return m;
}

ControlledSu2Factor random_factor(unsigned n, unsigned target, Rng &rng) {
  ControlledSu2Factor f;
  f.target = target;
  for (std::size_t x = 0; x < (std::size_t{1} << (n - 1)); ++x)
    f.table.push_back(haar_su2(rng));
  return f;
}

Matrix random_mcu_entry(unsigned k, Rng &rng) {
  return haar_unitary(std::size_t{1} << k, rng);
}

}  // namespace

TEST_CASE("drop_variable") {
  // x = 1011 over four variables, dropping variable 1 leaves 111.
  CHECK(drop_variable(0b1011, 4, 1) == 0b111);
  CHECK(drop_variable(0b1011, 4, 3) == 0b101);
  CHECK(drop_variable(0b1011, 4, 0) == 0b011);
}

TEST_CASE("identity plan") {
  ControlledSu2Factor f{1, {identity_matrix(2), identity_matrix(2)}};
  BlockPlan p = plan_block({f, f}, 1, 0.1, searcher(8));
  CHECK(p.m() == 2);
  CHECK(p.error_bound() == 0.0);
  for (const auto &ws : p.words)
    for (const HTWord &w : ws) {
      CHECK(w.t_count() == 0);
      CHECK(w.h_count() == 0);
    }
  for (const auto &fs : p.factored)
    for (const FactoredAnf &a : fs) CHECK(a.terms.empty());
  Circuit c = emit_block_circuit(p, OracleBackend::Naive);
  CHECK(c.size() == 0);
  RestrictedMatrix r = restricted_matrix(c);
  CHECK(frobenius_norm(r.matrix - identity_matrix(4)) == 0.0);
}

TEST_CASE("exact plan from table words") {
  const WordTable &t = table(8);
  std::size_t idx = 0;
  const Matrix hz = HTWord({1, 1, 0, 1, 0, 1, 0, 1}).matrix();
  REQUIRE(t.find_exact(hz, &idx));
  const Matrix w = t.word(idx).matrix();
  REQUIRE(std::abs(w.determinant() - cd(1)) < 1e-12);
  ControlledSu2Factor f{1, {identity_matrix(2), w}};
  BlockPlan p = plan_block({f}, 1, 1e-9, searcher(8));
  CHECK(p.error_bound() < 1e-12);
  CHECK(p.L >= t.word(idx).slots());
  for (std::size_t x = 0; x < 2; ++x)
    CHECK(frobenius_norm(p.words[0][x].matrix() - f.table[x]) < 1e-12);
  for (OracleBackend b : {OracleBackend::Naive, OracleBackend::SelectSwap}) {
    Circuit c = emit_block_circuit(p, b);
    RestrictedMatrix r = restricted_matrix(c);
    CHECK(phase_invariant_distance(r.matrix, block_matrix({f}, 2)) < 1e-10);
    CHECK(r.leakage < 1e-10);
  }
}

TEST_CASE("controlled HTH block") {
  const Matrix hth = split_phase(HTWord({1, 1, 1, 0}).matrix()).su2;
  ControlledSu2Factor f{1, {identity_matrix(2), hth}};
  BlockPlan p = plan_block({f}, 1, 0.01, searcher(16));
  CHECK(p.error_bound() <= 0.01);
  Circuit c = emit_block_circuit(p, OracleBackend::Naive);
  VerificationResult v = verify(c, UnitaryMatrix(block_matrix({f}, 2)), 0.01);
  CHECK(v.passed);
  CHECK(v.ancilla_leakage < 1e-9);
}

TEST_CASE("two factors on three variables") {
  Rng rng(17);
  const std::vector<ControlledSu2Factor> fs = {random_factor(3, 2, rng),
                                               random_factor(3, 2, rng)};
  BlockPlan p = plan_block(fs, 1, 0.1, searcher(16));
  REQUIRE(p.m() == 2);
  CHECK(p.kappa() == 1);
  CHECK(p.target_vars == std::vector<unsigned>{2});
  CHECK(p.anf_order() == std::vector<unsigned>{2, 0, 1});
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t x = 0; x < 4; ++x) {
      const HTWord &w = p.words[i][x];
      CHECK(w.slots() == p.L);
      CHECK(phase_invariant_distance_2x2(w.matrix(), fs[i].table[x]) <= 0.05);
    }
    CHECK(p.factor_error[i] <= 0.05);
  }
  // Exponent functions ignore the factor's own target and match the ANF
  // split.
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2 * p.L; ++j) {
      for (std::uint64_t x = 0; x < 8; ++x) {
        const bool v = p.f(i, j, x);
        CHECK(v == p.f(i, j, x ^ 1u));
        CHECK(v == bool(p.words[i][drop_variable(x, 3, 2)].exponent(j)));
        std::uint64_t y = 0;
        for (unsigned var : p.anf_order())
          y = (y << 1) | ((x >> (2 - var)) & 1u);
        CHECK(p.factored[i][j].evaluate(y) == v);
      }
    }
  }
  BlockStats stats;
  Circuit c = emit_block_circuit(p, OracleBackend::Naive, 3, &stats);
  VerificationResult v = verify(c, UnitaryMatrix(block_matrix(fs, 3)), 0.1);
  CHECK(v.distance <= 0.1);
  CHECK(v.distance <= p.error_bound() + 1e-9);
  CHECK(v.ancilla_leakage <= 1e-9);
  CHECK(stats.emitted_factors == 2);
  for (std::size_t g : stats.assembly_gates) CHECK(g == 2 * p.L * 2);
}

TEST_CASE("plan_block argument checks") {
  ControlledSu2Factor f{0, {identity_matrix(2), identity_matrix(2)}};
  CHECK_THROWS(plan_block({f}, 1, 0.1, searcher(8)));
  ControlledSu2Factor g{1, {identity_matrix(2)}};
  CHECK_THROWS(plan_block({g}, 1, 0.1, searcher(8)));
  CHECK_THROWS(plan_block({}, 1, 0.1, searcher(8)));
}

TEST_CASE("determinant trick") {
  Rng rng(19);
  std::uniform_real_distribution<double> ang(-10, 10);
  for (int k = 0; k < 100; ++k) {
    const double theta = ang(rng);
    const Matrix l = lifted_phase_block(theta);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = std::polar(1.0, theta);
    d(1, 1) = std::polar(1.0, -theta);
    CHECK(frobenius_norm(l - tensor(identity_matrix(2), d)) < 1e-12);
    const Matrix r = haar_su2(rng);
    const Matrix m = tensor(r, identity_matrix(2)) * l;
    // Ancilla |0>: rows and columns 0 and 2.
    Matrix top(2, 2), bottom(2, 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        top(a, b) = m(2 * a, 2 * b);
        bottom(a, b) = m(2 * a + 1, 2 * b + 1);
      }
    CHECK(frobenius_norm(top - std::polar(1.0, theta) * r) < 1e-12);
    CHECK(frobenius_norm(bottom - std::polar(1.0, -theta) * r) < 1e-12);
  }
}

TEST_CASE("synthesize_mcu_k") {
  MultiControlledUnitary id(2, {1}, {identity_matrix(2), identity_matrix(2)});
  BlockSynthesis s = synthesize_mcu_k(id, 0.1, searcher(8));
  CHECK(t_count(s.circuit) == 0);
  CHECK(verify(s.circuit, UnitaryMatrix::identity(4), 1e-12).passed);

  MultiControlledUnitary ct(2, {1}, {identity_matrix(2), gate_t()});
  BlockSynthesis c = synthesize_mcu_k(ct, 1e-2, searcher(8));
  CHECK(c.error_bound < 1e-12);
  VerificationResult v = verify(c.circuit, UnitaryMatrix(ct.to_matrix()), 1e-2);
  CHECK(v.distance < 1e-9);

  Rng rng(23);
  std::vector<Matrix> tab;
  for (int x = 0; x < 4; ++x) tab.push_back(random_mcu_entry(1, rng));
  MultiControlledUnitary w(3, {2}, tab);
  BlockSynthesis h = synthesize_mcu_k(w, 0.2, searcher(16));
  VerificationResult hv = verify(h.circuit, UnitaryMatrix(w.to_matrix()), 0.2);
  CHECK(hv.passed);
  CHECK(hv.distance <= h.error_bound + 1e-9);
  // The phase ancilla is a block variable: it carries the word error.
  CHECK(hv.ancilla_leakage <= h.error_bound + 1e-9);

  MultiControlledUnitary bad(3, {0}, tab);
  CHECK_THROWS(synthesize_mcu_k(bad, 0.2, searcher(8)));
}

TEST_CASE("synthesize_mcu_k with two targets") {
  Rng rng(29);
  std::vector<Matrix> tab = {random_mcu_entry(2, rng), random_mcu_entry(2, rng)};
  MultiControlledUnitary w(3, {1, 2}, tab);
  BlockSynthesis s = synthesize_mcu_k(w, 0.3, searcher(16));
  VerificationResult v = verify(s.circuit, UnitaryMatrix(w.to_matrix()), 0.3);
  CHECK(v.passed);
  CHECK(v.ancilla_leakage <= s.error_bound + 1e-9);
}

TEST_CASE("synthesize_mcu_naive") {
  // Diagonal entries with phases in multiples of pi/4.
  std::vector<Matrix> tab;
  for (int x = 0; x < 4; ++x) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = std::polar(1.0, M_PI / 4 * x);
    d(1, 1) = std::polar(1.0, M_PI / 4 * (3 * x + 1));
    tab.push_back(d);
  }
  MultiControlledUnitary diag(3, {0}, tab);
  BlockSynthesis s = synthesize_mcu_naive(diag, 1e-3, searcher(12));
  VerificationResult v = verify(s.circuit, UnitaryMatrix(diag.to_matrix()), 1e-3);
  CHECK(v.distance < 1e-9);

  Rng rng(31);
  std::vector<Matrix> rt;
  for (int x = 0; x < 4; ++x) rt.push_back(haar_unitary(2, rng));
  MultiControlledUnitary u(3, {1}, rt);
  for (OracleBackend b : {OracleBackend::Naive, OracleBackend::SelectSwap}) {
    McuOptions o;
    o.backend = b;
    BlockSynthesis r = synthesize_mcu_naive(u, 0.1, searcher(16), o);
    VerificationResult rv = verify(r.circuit, UnitaryMatrix(u.to_matrix()), 0.1);
    CHECK(rv.passed);
    CHECK(rv.ancilla_leakage <= r.error_bound + 1e-9);
    CHECK(t_count(r.circuit) > 0);
  }
  CHECK_THROWS_AS(synthesize_mcu_naive(u, 1e-6, searcher(8)),
                  UnreachablePrecision);
}
