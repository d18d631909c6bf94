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
#include <set>
#include <tuple>

#include "csdsynth/su2_words.hpp"

using namespace csdsynth;

namespace {

const WordTable &table(unsigned depth) {
  static std::map<unsigned, WordTable> cache;
  auto it = cache.find(depth);
  if (it == cache.end())
    it = cache.emplace(depth, load_or_build_word_table(depth)).first;
  return it->second;
}

using Key = std::array<long long, 8>;

// Floating-point key of a 2x2 unitary modulo global phase.
Key phase_key(const Matrix &m) {
  cd ref = 0;
  for (int i = 0; i < 4 && std::abs(ref) < 1e-6; ++i) ref = m(i / 2, i % 2);
  const cd p = std::conj(ref) / std::abs(ref);
  Key k;
  for (int i = 0; i < 4; ++i) {
    const cd v = m(i / 2, i % 2) * p;
    k[2 * i] = std::llround(v.real() * 1e7);
    k[2 * i + 1] = std::llround(v.imag() * 1e7);
  }
  return k;
}

// Element counts by minimal T-count, by floating-point BFS.
std::vector<std::uint64_t> brute_force_counts(unsigned max_t,
                                              std::vector<Matrix> *out = nullptr) {
  std::set<Key> seen;
  std::vector<Matrix> frontier;
  std::vector<std::uint64_t> counts;
  for (const Matrix &m : {identity_matrix(2), gate_h()}) {
    if (seen.insert(phase_key(m)).second) frontier.push_back(m);
  }
  counts.push_back(frontier.size());
  std::vector<Matrix> all = frontier;
  for (unsigned t = 1; t <= max_t; ++t) {
    std::vector<Matrix> next;
    for (const Matrix &a : all) {
      for (const Matrix &b : {identity_matrix(2), gate_h()}) {
        Matrix m = a * gate_t() * b;
        if (seen.insert(phase_key(m)).second) next.push_back(m);
      }
    }
    counts.push_back(next.size());
    all.insert(all.end(), next.begin(), next.end());
  }
  if (out) *out = all;
  return counts;
}

// An element is Clifford when it maps X and Z to Paulis by conjugation.
bool is_clifford(const Matrix &m) {
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  const Matrix y = cd(0, 1) * gate_x() * z;
  for (const Matrix &p : {gate_x(), z}) {
    const Matrix c = m * p * m.adjoint();
    double best = 1e9;
    for (const Matrix &q : {gate_x(), y, z})
      best = std::min(best, phase_invariant_distance_2x2(c, q));
    if (best > 1e-9) return false;
  }
  return true;
}

std::size_t clifford_classes(const WordTable &t) {
  std::set<Key> seen;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (is_clifford(t.entry_matrix(i))) seen.insert(phase_key(t.entry_matrix(i)));
  return seen.size();
}

std::size_t brute_force_cliffords(unsigned max_t) {
  std::vector<Matrix> all;
  brute_force_counts(max_t, &all);
  std::size_t n = 0;
  for (const Matrix &m : all) n += is_clifford(m);
  return n;
}

double dist_to_phase(const Matrix &w, const Matrix &r, double phase) {
  return spectral_norm(w - std::polar(1.0, phase) * r);
}

}  // namespace

TEST_CASE("split_phase") {
  PhasedSu2 i = split_phase(identity_matrix(2));
  CHECK(i.theta == doctest::Approx(0.0));
  CHECK(frobenius_norm(i.su2 - identity_matrix(2)) < 1e-12);
  PhasedSu2 t = split_phase(gate_t());
  CHECK(t.theta == doctest::Approx(M_PI / 8));
  Matrix want = Matrix::Zero(2, 2);
  want(0, 0) = std::polar(1.0, -M_PI / 8);
  want(1, 1) = std::polar(1.0, M_PI / 8);
  CHECK(frobenius_norm(t.su2 - want) < 1e-12);
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    Matrix v = haar_unitary(2, rng);
    PhasedSu2 p = split_phase(v);
    CHECK(p.theta >= 0.0);
    CHECK(p.theta < M_PI);
    CHECK(std::abs(p.su2.determinant() - cd(1)) < 1e-12);
    CHECK(frobenius_norm(std::polar(1.0, p.theta) * p.su2 - v) < 1e-12);
  }
}

TEST_CASE("quaternions") {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    Matrix a = haar_su2(rng), b = haar_su2(rng);
    Quaternion qa = su2_to_quaternion(a), qb = su2_to_quaternion(b);
    CHECK(frobenius_norm(quaternion_to_su2(qa) - a) < 1e-12);
    CHECK(frobenius_norm(quaternion_to_su2(quaternion_multiply(qa, qb)) -
                         a * b) < 1e-12);
    CHECK(frobenius_norm(quaternion_to_su2(quaternion_conjugate(qa)) -
                         a.adjoint()) < 1e-12);
  }
}

TEST_CASE("phase-invariant distance on 2x2") {
  Rng rng(3);
  Matrix a = haar_unitary(2, rng);
  CHECK(phase_invariant_distance_2x2(a, std::polar(1.0, 0.7) * a) < 1e-12);
  // H against I: eigenvalues +-1 are best served by phase pi/2.
  CHECK(phase_invariant_distance_2x2(gate_h(), identity_matrix(2)) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("words") {
  HTWord s({0, 1, 0, 1});
  CHECK(s.t_count() == 2);
  CHECK(s.h_count() == 0);
  Matrix sm = Matrix::Zero(2, 2);
  sm(0, 0) = 1;
  sm(1, 1) = cd(0, 1);
  CHECK(frobenius_norm(s.matrix() - sm) < 1e-12);
  HTWord h = HTWord::from_bits(0b01, 1);
  CHECK(h.exponents() == std::vector<std::uint8_t>{1, 0});
  CHECK(h.padded(3).slots() == 3);
  CHECK(frobenius_norm(h.padded(3).matrix() - h.matrix()) == 0.0);
  CHECK_THROWS(s.padded(1));
  CHECK(frobenius_norm(h.concat(s).matrix() - h.matrix() * s.matrix()) <
        1e-12);
  CHECK_THROWS(HTWord({1, 0, 1}));
  CHECK_THROWS(HTWord({2, 0}));
}

TEST_CASE("word table contents") {
  const WordTable &t = table(8);
  std::size_t idx = 0;
  REQUIRE(t.find_exact(identity_matrix(2), &idx));
  CHECK(t.word(idx).exponents().empty());
  Matrix s = HTWord({0, 1, 0, 1}).matrix();
  REQUIRE(t.find_exact(s, &idx));
  CHECK(t.t_count(idx) == 2);
  CHECK(frobenius_norm(t.word(idx).matrix() - s) < 1e-12);
  for (std::size_t i = 0; i < t.size(); i += 97) {
    CHECK(frobenius_norm(t.entry_matrix(i) - t.word(i).matrix()) < 1e-10);
    CHECK(t.word(i).t_count() == t.t_count(i));
  }
}

TEST_CASE("word table counts match a floating-point recount") {
  const std::vector<std::uint64_t> want = brute_force_counts(8);
  CHECK(table(8).level_counts() == want);
  CHECK(table(4).level_counts() ==
        std::vector<std::uint64_t>(want.begin(), want.begin() + 5));
  // Clifford classes reachable at depth 4 match the recount; S costs two
  // T gates, so all 24 appear only at depth 8.
  CHECK(clifford_classes(table(4)) == brute_force_cliffords(4));
  CHECK(clifford_classes(table(6)) == brute_force_cliffords(6));
  CHECK(clifford_classes(table(6)) < 24);
  CHECK(clifford_classes(table(8)) == 24);
}

TEST_CASE("depth 0 and resource limits") {
  WordTable t0 = build_word_table(0);
  CHECK(t0.size() == 2);
  CHECK(t0.level_counts() == std::vector<std::uint64_t>{2});
  WordTableLimits small;
  small.max_entries = 100;
  CHECK_THROWS_AS(build_word_table(10, small), ResourceLimit);
  WordTableLimits shallow;
  shallow.max_depth = 5;
  CHECK_THROWS_AS(build_word_table(6, shallow), ResourceLimit);
}

TEST_CASE("table serialization round-trip") {
  const WordTable &t = table(8);
  WordTable back = deserialize_word_table(serialize_word_table(t));
  REQUIRE(back.size() == t.size());
  CHECK(back.max_t() == t.max_t());
  for (std::size_t i = 0; i < t.size(); ++i) {
    REQUIRE(back.word_bits(i) == t.word_bits(i));
    REQUIRE(back.phase_class(i) == t.phase_class(i));
  }
  CHECK_THROWS(deserialize_word_table("HTW1"));
  CHECK_THROWS(deserialize_word_table("nope"));
}

TEST_CASE("nearest matches an exhaustive scan") {
  const WordTable &t = table(12);
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    Matrix r = haar_su2(rng);
    double best = 1e9;
    for (std::size_t i = 0; i < t.size(); ++i)
      best = std::min(best, phase_invariant_distance_2x2(t.entry_matrix(i), r));
    WordTable::Match m = t.nearest(su2_to_quaternion(r));
    CHECK(m.distance == doctest::Approx(best).epsilon(1e-9));
    CHECK(phase_invariant_distance_2x2(t.word(m.index).matrix(), r) ==
          doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("approximate_su2") {
  const WordTable &t = table(16);
  double d = 1;
  HTWord id = approximate_su2(identity_matrix(2), 1e-9, t, 0, &d);
  CHECK(id.t_count() == 0);
  CHECK(id.h_count() == 0);
  CHECK(d < 1e-12);

  Rng rng(5);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int k = 0; k < 50; ++k) {
    std::vector<std::uint8_t> e(2 * 8);
    for (auto &x : e) x = static_cast<std::uint8_t>(bit(rng));
    HTWord w(e);
    const Matrix r = split_phase(w.matrix()).su2;
    HTWord got = approximate_su2(r, 1e-9, t, 8, &d);
    CHECK(d < 1e-12);
    CHECK(got.slots() == 8);
    CHECK(phase_invariant_distance_2x2(got.matrix(), w.matrix()) < 1e-9);
  }
  try {
    approximate_su2(haar_su2(rng), 1e-7, table(8));
    FAIL("expected UnreachablePrecision");
  } catch (const UnreachablePrecision &e) {
    CHECK(e.requested() == 1e-7);
    CHECK(e.achievable() > 1e-7);
  }
}

TEST_CASE("approximate_su2 reaches 0.05 with the pair tier") {
  const WordSearcher s(table(16));
  Rng rng(6);
  for (int k = 0; k < 1000; ++k) {
    Matrix r = haar_su2(rng);
    double d = 1;
    HTWord w = approximate_su2(r, 0.05, s, 0, &d);
    REQUIRE(d <= 0.05);
    CHECK(phase_invariant_distance_2x2(w.matrix(), r) ==
          doctest::Approx(d).epsilon(1e-6));
  }
}

TEST_CASE("searcher reports the distances it achieves") {
  const WordSearcher s(table(12), 5);
  CHECK(s.prefix_t() == 5);
  Rng rng(7);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI);
  for (int k = 0; k < 30; ++k) {
    Matrix r = haar_su2(rng);
    Quaternion q = su2_to_quaternion(r);
    for (WordApprox a : {s.free_single(q), s.free_pair(q), s.free(q, 0.01)})
      CHECK(dist_to_phase(a.word.matrix(), r, a.phase) ==
            doctest::Approx(a.distance).epsilon(1e-6));
    CHECK(s.free_pair(q).distance <= s.free_single(q).distance + 1e-12);
    const unsigned m = static_cast<unsigned>(k % 16);
    for (WordApprox a : {s.locked_single(q, m), s.locked_pair(q, m)})
      CHECK(dist_to_phase(a.word.matrix(), r, m * M_PI / 8) ==
            doctest::Approx(a.distance).epsilon(1e-6));
    const double psi = ang(rng);
    for (WordApprox a : {s.column_single(psi), s.column_pair(psi)}) {
      Matrix w = a.word.matrix();
      const double got = std::hypot(std::abs(w(0, 0) - std::polar(1.0, psi)),
                                    std::abs(w(1, 0)));
      CHECK(got == doctest::Approx(a.distance).epsilon(1e-6));
    }
  }
}

TEST_CASE("covering radius does not grow with depth") {
  double prev = 10;
  for (unsigned d : {4u, 8u, 12u, 16u}) {
    const double r = sampled_covering_radius(table(d), 2000, 9);
    CHECK(r <= prev);
    prev = r;
  }
}
