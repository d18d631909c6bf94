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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "csdsynth/matrix.hpp"

namespace csdsynth {

using Qubit = std::uint32_t;

enum class GateKind : std::uint8_t {
  H,
  S,
  Sdg,
  T,
  Tdg,
  X,
  Y,
  Z,
  CX,
  CZ,
  SWAP,
  CH,
  CT,
  CCX,
};

constexpr unsigned kNumGateKinds = 14;

unsigned gate_arity(GateKind k);
std::string_view gate_name(GateKind k);
/** Inverse of gate_name; throws InvalidInput on unknown names. */
GateKind gate_kind_from_name(std::string_view name);

/** True for gates that survive lowering unchanged. */
bool is_primitive(GateKind k);

/** T and Tdg gates in the lowered form of one gate of this kind. */
std::uint64_t gate_t_cost(GateKind k);
/** Non-T gates in the lowered form of one gate of this kind. */
std::uint64_t gate_clifford_cost(GateKind k);

/** Single-qubit matrix of the target action (for controlled kinds, the
 * operator applied when all controls are 1). SWAP has none. */
Matrix gate_target_matrix(GateKind k);

/** Qubits are ordered controls first, target last. */
struct Gate {
  GateKind kind;
  std::array<Qubit, 3> q;

  Gate(GateKind k, Qubit a);
  Gate(GateKind k, Qubit a, Qubit b);
  Gate(GateKind k, Qubit a, Qubit b, Qubit c);

  unsigned arity() const { return gate_arity(kind); }
  Qubit target() const { return q[arity() - 1]; }
  bool operator==(const Gate &o) const;
};

/**
 * Gate list over n_data data qubits followed by n_ancilla ancillae.
 *
 * Ancillae start in |0> and must be returned to |0>. Qubit i is the
 * i-th most significant bit of a basis index.
 */
class Circuit {
 public:
  Circuit() = default;
  Circuit(std::size_t n_data, std::size_t n_ancilla)
      : n_data_(n_data), n_ancilla_(n_ancilla) {}

  std::size_t n_data() const { return n_data_; }
  std::size_t n_ancilla() const { return n_ancilla_; }
  std::size_t num_qubits() const { return n_data_ + n_ancilla_; }
  const std::vector<Gate> &gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  /** Appends new ancillae and returns the index of the first. */
  Qubit add_ancillas(std::size_t count);
  void set_ancilla_count(std::size_t count);

  void append(const Gate &g);
  /** Appends `other`, mapping its qubit i to map[i]. */
  void append_mapped(const Circuit &other, const std::vector<Qubit> &map);
  void append_gates(const std::vector<Gate> &gates);

  void h(Qubit a) { append(Gate(GateKind::H, a)); }
  void x(Qubit a) { append(Gate(GateKind::X, a)); }
  void t(Qubit a) { append(Gate(GateKind::T, a)); }
  void cx(Qubit c, Qubit t) { append(Gate(GateKind::CX, c, t)); }
  void ch(Qubit c, Qubit t) { append(Gate(GateKind::CH, c, t)); }
  void ct(Qubit c, Qubit t) { append(Gate(GateKind::CT, c, t)); }
  void ccx(Qubit a, Qubit b, Qubit t) { append(Gate(GateKind::CCX, a, b, t)); }

  /** Reversed sequence of inverted gates. Throws for CT, whose inverse
   * is outside the gate set. */
  Circuit inverse() const;

  bool operator==(const Circuit &o) const;

 private:
  std::size_t n_data_ = 0;
  std::size_t n_ancilla_ = 0;
  std::vector<Gate> gates_;
};

/** Inverse gates of a slice, in reverse order. */
std::vector<Gate> inverse_gates(const std::vector<Gate> &gates,
                                std::size_t begin, std::size_t end);

std::uint64_t t_count(const Circuit &c);
std::uint64_t clifford_count(const Circuit &c);
bool contains_kind(const Circuit &c, GateKind k);
/** Ancillae needed by the lowered circuit (CT adds one clean scratch). */
std::size_t ancilla_count(const Circuit &c);

/**
 * Expands CCX, CH and CT into {H,S,Sdg,T,Tdg,X,Y,Z,CX,CZ,SWAP}. If the
 * circuit has CT gates one scratch ancilla is appended after the
 * existing ones.
 */
Circuit lower_to_clifford_t(const Circuit &c);

struct StageCost {
  std::string name;
  std::uint64_t t = 0;
  std::uint64_t ancilla = 0;
};

struct CostReport {
  std::uint64_t t_count = 0;
  std::uint64_t ancilla_count = 0;
  std::uint64_t clifford_count = 0;
  std::vector<StageCost> stages;
};

CostReport cost_of(const Circuit &c, const std::string &stage_name);

}  // namespace csdsynth
