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

#include <array>
#include <cmath>

#include "csdsynth/simulate.hpp"

namespace csdsynth {

namespace {

using Mat2 = std::array<cd, 4>;

const std::array<Mat2, kNumGateKinds> &target_matrices() {
  static const std::array<Mat2, kNumGateKinds> table = [] {
    std::array<Mat2, kNumGateKinds> t{};
    for (unsigned k = 0; k < kNumGateKinds; ++k) {
      GateKind kind = static_cast<GateKind>(k);
      if (kind == GateKind::SWAP) continue;
      Matrix m = gate_target_matrix(kind);
      t[k] = {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
    }
    return t;
  }();
  return table;
}

bool is_diagonal_kind(GateKind k) {
  switch (k) {
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::Z:
    case GateKind::CZ:
    case GateKind::CT:
      return true;
    default:
      return false;
  }
}

}  // namespace

StateVector::StateVector(unsigned n_qubits, std::uint64_t basis)
    : n_(n_qubits) {
  if (n_qubits > kDenseQubitCap) {
    throw QubitBudgetExceeded("dense state exceeds the qubit cap", n_qubits,
                              kDenseQubitCap);
  }
  amp_.assign(std::size_t{1} << n_qubits, 0.0);
  if (basis >= amp_.size()) throw InvalidInput("basis index out of range");
  amp_[basis] = 1.0;
}

StateVector::StateVector(unsigned n_qubits, std::vector<cd> amplitudes)
    : n_(n_qubits), amp_(std::move(amplitudes)) {
  if (n_qubits > kDenseQubitCap) {
    throw QubitBudgetExceeded("dense state exceeds the qubit cap", n_qubits,
                              kDenseQubitCap);
  }
  if (amp_.size() != (std::size_t{1} << n_qubits)) {
    throw DimensionMismatch("amplitude count is not 2^n");
  }
}

double StateVector::norm() const {
  double s = 0;
  for (const cd &a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::apply(const Gate &g, kernels::Isa isa) {
  const unsigned ar = g.arity();
  for (unsigned i = 0; i < ar; ++i) {
    if (g.q[i] >= n_) {
      throw InvalidInput("gate qubit out of range",
                         {{"qubit", std::to_string(g.q[i])},
                          {"n_qubits", std::to_string(n_)}});
    }
  }
  auto bit = [&](Qubit q) { return n_ - 1 - q; };
  if (g.kind == GateKind::SWAP) {
    static const cd x[4] = {0.0, 1.0, 1.0, 0.0};
    const std::uint64_t ca = std::uint64_t{1} << bit(g.q[0]);
    const std::uint64_t cb = std::uint64_t{1} << bit(g.q[1]);
    kernels::apply_1q(amp_.data(), n_, bit(g.q[1]), ca, x, isa);
    kernels::apply_1q(amp_.data(), n_, bit(g.q[0]), cb, x, isa);
    kernels::apply_1q(amp_.data(), n_, bit(g.q[1]), ca, x, isa);
    return;
  }
  std::uint64_t cmask = 0;
  for (unsigned i = 0; i + 1 < ar; ++i) cmask |= std::uint64_t{1} << bit(g.q[i]);
  const Mat2 &m = target_matrices()[static_cast<unsigned>(g.kind)];
  const unsigned t = bit(g.target());
  if (is_diagonal_kind(g.kind)) {
    kernels::apply_diag(amp_.data(), n_, t, cmask, m[0], m[3], isa);
  } else {
    kernels::apply_1q(amp_.data(), n_, t, cmask, m.data(), isa);
  }
}

void StateVector::apply(const Circuit &c) {
  if (c.num_qubits() > n_) throw InvalidInput("circuit wider than the state");
  const kernels::Isa isa = kernels::active_isa();
  for (const Gate &g : c.gates()) apply(g, isa);
}

StateVector apply_gate(StateVector s, const Gate &g) {
  s.apply(g);
  return s;
}

Matrix circuit_unitary(const Circuit &c) {
  const unsigned n = static_cast<unsigned>(c.num_qubits());
  if (n > 12) {
    throw QubitBudgetExceeded("circuit_unitary is limited to 12 qubits", n,
                              12);
  }
  const std::size_t dim = std::size_t{1} << n;
  Matrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector s(n, col);
    s.apply(c);
    for (std::size_t r = 0; r < dim; ++r) {
      u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) =
          s.amplitudes()[r];
    }
  }
  return u;
}

}  // namespace csdsynth
