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

#include "csdsynth/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace csdsynth {

namespace {

struct KindInfo {
  std::string_view name;
  unsigned arity;
};

constexpr KindInfo kInfo[kNumGateKinds] = {
    {"h", 1},  {"s", 1},  {"sdg", 1},  {"t", 1},  {"tdg", 1},
    {"x", 1},  {"y", 1},  {"z", 1},    {"cx", 2}, {"cz", 2},
    {"swap", 2}, {"ch", 2}, {"ct", 2}, {"ccx", 3},
};

const KindInfo &info(GateKind k) { return kInfo[static_cast<unsigned>(k)]; }

bool is_t_type(GateKind k) { return k == GateKind::T || k == GateKind::Tdg; }

// Lowering templates. `scratch` is only used by CT.
void lower_ccx(Qubit a, Qubit b, Qubit c, std::vector<Gate> &out) {
  using K = GateKind;
  out.emplace_back(K::H, c);
  out.emplace_back(K::CX, b, c);
  out.emplace_back(K::Tdg, c);
  out.emplace_back(K::CX, a, c);
  out.emplace_back(K::T, c);
  out.emplace_back(K::CX, b, c);
  out.emplace_back(K::Tdg, c);
  out.emplace_back(K::CX, a, c);
  out.emplace_back(K::T, b);
  out.emplace_back(K::T, c);
  out.emplace_back(K::H, c);
  out.emplace_back(K::CX, a, b);
  out.emplace_back(K::T, a);
  out.emplace_back(K::Tdg, b);
  out.emplace_back(K::CX, a, b);
}

void lower_ch(Qubit c, Qubit t, std::vector<Gate> &out) {
  using K = GateKind;
  out.emplace_back(K::Sdg, t);
  out.emplace_back(K::H, t);
  out.emplace_back(K::Tdg, t);
  out.emplace_back(K::CX, c, t);
  out.emplace_back(K::T, t);
  out.emplace_back(K::H, t);
  out.emplace_back(K::S, t);
}

void lower_ct(Qubit c, Qubit t, Qubit scratch, std::vector<Gate> &out) {
  lower_ccx(c, t, scratch, out);
  out.emplace_back(GateKind::T, scratch);
  lower_ccx(c, t, scratch, out);
}

void lower_gate(const Gate &g, Qubit scratch, std::vector<Gate> &out) {
  switch (g.kind) {
    case GateKind::CCX:
      lower_ccx(g.q[0], g.q[1], g.q[2], out);
      break;
    case GateKind::CH:
      lower_ch(g.q[0], g.q[1], out);
      break;
    case GateKind::CT:
      lower_ct(g.q[0], g.q[1], scratch, out);
      break;
    default:
      out.push_back(g);
  }
}

struct LoweredCost {
  std::uint64_t t = 0;
  std::uint64_t clifford = 0;
};

LoweredCost measure_lowering(GateKind k) {
  std::vector<Gate> out;
  switch (gate_arity(k)) {
    case 1:
      lower_gate(Gate(k, 0), 3, out);
      break;
    case 2:
      lower_gate(Gate(k, 0, 1), 3, out);
      break;
    default:
      lower_gate(Gate(k, 0, 1, 2), 3, out);
  }
  LoweredCost c;
  for (const Gate &g : out) (is_t_type(g.kind) ? c.t : c.clifford)++;
  return c;
}

const std::array<LoweredCost, kNumGateKinds> &lowering_table() {
  static const std::array<LoweredCost, kNumGateKinds> table = [] {
    std::array<LoweredCost, kNumGateKinds> t{};
    for (unsigned i = 0; i < kNumGateKinds; ++i) {
      t[i] = measure_lowering(static_cast<GateKind>(i));
    }
    return t;
  }();
  return table;
}

GateKind inverse_kind(GateKind k) {
  switch (k) {
    case GateKind::S:
      return GateKind::Sdg;
    case GateKind::Sdg:
      return GateKind::S;
    case GateKind::T:
      return GateKind::Tdg;
    case GateKind::Tdg:
      return GateKind::T;
    case GateKind::CT:
      throw InvalidInput("CT has no inverse in the gate set");
    default:
      return k;
  }
}

}  // namespace

unsigned gate_arity(GateKind k) { return info(k).arity; }

std::string_view gate_name(GateKind k) { return info(k).name; }

GateKind gate_kind_from_name(std::string_view name) {
  for (unsigned i = 0; i < kNumGateKinds; ++i) {
    if (kInfo[i].name == name) return static_cast<GateKind>(i);
  }
  throw InvalidInput("unknown gate kind '" + std::string(name) + "'");
}

bool is_primitive(GateKind k) {
  return k != GateKind::CCX && k != GateKind::CH && k != GateKind::CT;
}

std::uint64_t gate_t_cost(GateKind k) {
  return lowering_table()[static_cast<unsigned>(k)].t;
}

std::uint64_t gate_clifford_cost(GateKind k) {
  return lowering_table()[static_cast<unsigned>(k)].clifford;
}

Matrix gate_target_matrix(GateKind k) {
  const cd i(0, 1);
  Matrix m(2, 2);
  switch (k) {
    case GateKind::H:
    case GateKind::CH:
      return gate_h();
    case GateKind::S:
      m << 1, 0, 0, i;
      return m;
    case GateKind::Sdg:
      m << 1, 0, 0, -i;
      return m;
    case GateKind::T:
    case GateKind::CT:
      return gate_t();
    case GateKind::Tdg:
      m << 1, 0, 0, std::polar(1.0, -M_PI / 4);
      return m;
    case GateKind::X:
    case GateKind::CX:
    case GateKind::CCX:
      return gate_x();
    case GateKind::Y:
      m << 0, -i, i, 0;
      return m;
    case GateKind::Z:
    case GateKind::CZ:
      m << 1, 0, 0, -1;
      return m;
    case GateKind::SWAP:
      break;
  }
  throw InvalidInput("gate kind has no single-qubit target matrix");
}

Gate::Gate(GateKind k, Qubit a) : kind(k), q{a, 0, 0} {
  if (gate_arity(k) != 1) throw InvalidInput("gate arity mismatch");
}

Gate::Gate(GateKind k, Qubit a, Qubit b) : kind(k), q{a, b, 0} {
  if (gate_arity(k) != 2) throw InvalidInput("gate arity mismatch");
  if (a == b) throw InvalidInput("gate qubits must be distinct");
}

Gate::Gate(GateKind k, Qubit a, Qubit b, Qubit c) : kind(k), q{a, b, c} {
  if (gate_arity(k) != 3) throw InvalidInput("gate arity mismatch");
  if (a == b || a == c || b == c) {
    throw InvalidInput("gate qubits must be distinct");
  }
}

bool Gate::operator==(const Gate &o) const {
  if (kind != o.kind) return false;
  for (unsigned i = 0; i < arity(); ++i) {
    if (q[i] != o.q[i]) return false;
  }
  return true;
}

Qubit Circuit::add_ancillas(std::size_t count) {
  Qubit first = static_cast<Qubit>(num_qubits());
  n_ancilla_ += count;
  return first;
}

void Circuit::set_ancilla_count(std::size_t count) {
  if (count < n_ancilla_) {
    for (const Gate &g : gates_) {
      for (unsigned i = 0; i < g.arity(); ++i) {
        if (g.q[i] >= n_data_ + count) {
          throw InvalidInput("cannot shrink ancilla register below use");
        }
      }
    }
  }
  n_ancilla_ = count;
}

void Circuit::append(const Gate &g) {
  for (unsigned i = 0; i < g.arity(); ++i) {
    if (g.q[i] >= num_qubits()) {
      throw InvalidInput("gate qubit index out of range",
                         {{"qubit", std::to_string(g.q[i])},
                          {"num_qubits", std::to_string(num_qubits())}});
    }
  }
  gates_.push_back(g);
}

void Circuit::append_mapped(const Circuit &other,
                            const std::vector<Qubit> &map) {
  if (map.size() < other.num_qubits()) {
    throw InvalidInput("qubit map shorter than circuit");
  }
  for (Gate g : other.gates()) {
    for (unsigned i = 0; i < g.arity(); ++i) g.q[i] = map[g.q[i]];
    append(g);
  }
}

void Circuit::append_gates(const std::vector<Gate> &gates) {
  for (const Gate &g : gates) append(g);
}

std::vector<Gate> inverse_gates(const std::vector<Gate> &gates,
                                std::size_t begin, std::size_t end) {
  std::vector<Gate> out;
  out.reserve(end - begin);
  for (std::size_t i = end; i > begin; --i) {
    Gate g = gates[i - 1];
    g.kind = inverse_kind(g.kind);
    out.push_back(g);
  }
  return out;
}

Circuit Circuit::inverse() const {
  Circuit out(n_data_, n_ancilla_);
  out.gates_ = inverse_gates(gates_, 0, gates_.size());
  return out;
}

bool Circuit::operator==(const Circuit &o) const {
  return n_data_ == o.n_data_ && n_ancilla_ == o.n_ancilla_ &&
         gates_ == o.gates_;
}

std::uint64_t t_count(const Circuit &c) {
  std::uint64_t n = 0;
  for (const Gate &g : c.gates()) n += gate_t_cost(g.kind);
  return n;
}

std::uint64_t clifford_count(const Circuit &c) {
  std::uint64_t n = 0;
  for (const Gate &g : c.gates()) n += gate_clifford_cost(g.kind);
  return n;
}

bool contains_kind(const Circuit &c, GateKind k) {
  return std::any_of(c.gates().begin(), c.gates().end(),
                     [k](const Gate &g) { return g.kind == k; });
}

std::size_t ancilla_count(const Circuit &c) {
  return c.n_ancilla() + (contains_kind(c, GateKind::CT) ? 1 : 0);
}

Circuit lower_to_clifford_t(const Circuit &c) {
  bool need_scratch = contains_kind(c, GateKind::CT);
  Circuit out(c.n_data(), c.n_ancilla() + (need_scratch ? 1 : 0));
  Qubit scratch = static_cast<Qubit>(c.num_qubits());
  std::vector<Gate> buf;
  buf.reserve(c.size());
  for (const Gate &g : c.gates()) lower_gate(g, scratch, buf);
  out.append_gates(buf);
  return out;
}

CostReport cost_of(const Circuit &c, const std::string &stage_name) {
  CostReport r;
  r.t_count = t_count(c);
  r.ancilla_count = ancilla_count(c);
  r.clifford_count = clifford_count(c);
  r.stages.push_back({stage_name, r.t_count, r.ancilla_count});
  return r;
}

}  // namespace csdsynth
