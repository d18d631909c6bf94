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

#pragma once

#include <cstdint>
#include <vector>

#include "csdsynth/circuit.hpp"
#include "csdsynth/kernels.hpp"

namespace csdsynth {

constexpr unsigned kDenseQubitCap = 26;

/** Dense state over n qubits; qubit 0 is the most significant bit. */
class StateVector {
 public:
  explicit StateVector(unsigned n_qubits, std::uint64_t basis = 0);
  StateVector(unsigned n_qubits, std::vector<cd> amplitudes);

  unsigned num_qubits() const { return n_; }
  const std::vector<cd> &amplitudes() const { return amp_; }
  std::vector<cd> &amplitudes() { return amp_; }
  double norm() const;

  void apply(const Gate &g, kernels::Isa isa);
  void apply(const Gate &g) { apply(g, kernels::active_isa()); }
  void apply(const Circuit &c);

 private:
  unsigned n_;
  std::vector<cd> amp_;
};

StateVector apply_gate(StateVector s, const Gate &g);

/** Full unitary of the circuit over all its qubits (small circuits). */
Matrix circuit_unitary(const Circuit &c);

/**
 * Sparse state for wide circuits: a list of basis keys (one bit per
 * qubit) with amplitudes. Permutation and diagonal gates act in place;
 * H and CH branch and merge. Amplitudes with |a|^2 < 1e-30 are dropped.
 */
class SparseState {
 public:
  SparseState(std::size_t n_qubits, const std::vector<bool> &basis);

  std::size_t num_qubits() const { return n_; }
  std::size_t size() const { return amp_.size(); }
  bool bit(std::size_t entry, std::size_t q) const {
    return (keys_[entry * words_ + q / 64] >> (q % 64)) & 1u;
  }
  const std::uint64_t *key(std::size_t entry) const {
    return keys_.data() + entry * words_;
  }
  std::size_t key_words() const { return words_; }
  cd amplitude(std::size_t entry) const { return amp_[entry]; }

  void apply(const Gate &g);
  void apply(const Circuit &c);

 private:
  void flip(std::size_t e, std::size_t q) {
    keys_[e * words_ + q / 64] ^= std::uint64_t{1} << (q % 64);
  }
  void branch(Qubit target, std::int64_t control, const cd m[4]);

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> keys_;
  std::vector<cd> amp_;
};

enum class SimMethod { Auto, Dense, Sparse };

/**
 * Action of a circuit on data inputs with all ancillae in |0>.
 *
 * `matrix` column x is the ancilla-zero block of C(|x>|0^m>); `leak_gram`
 * is the Gram matrix of the ancilla-nonzero parts, and `leakage` the
 * largest of their norms.
 */
struct RestrictedMatrix {
  Matrix matrix;
  Matrix leak_gram;
  double leakage = 0;
};

/** Auto runs dense up to 20 qubits and sparse beyond. */
RestrictedMatrix restricted_matrix(const Circuit &c,
                                   SimMethod method = SimMethod::Auto);

struct VerificationResult {
  /** min over phi of ||U (x) |0^m> - e^{i phi} C (I (x) |0^m>)||. */
  double distance = 0;
  /** Same at phi = 0. */
  double phase_sensitive_distance = 0;
  /** min over phi of ||U - e^{i phi} M|| with M the restricted matrix. */
  double restricted_distance = 0;
  double ancilla_leakage = 0;
  double phase = 0;
  bool passed = false;
};

/** passed = distance <= budget. The distance includes every component
 * left on the ancillae, so leakage never exceeds it. */
VerificationResult verify(const Circuit &c, const UnitaryMatrix &u_ref,
                          double budget, SimMethod method = SimMethod::Auto);
VerificationResult verify(const RestrictedMatrix &r,
                          const UnitaryMatrix &u_ref, double budget);

/** min over phi of ||a - e^{i phi} b|| for equal-shape matrices. */
double phase_invariant_distance(const Matrix &a, const Matrix &b);

}  // namespace csdsynth
