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

#include <algorithm>
#include <cstring>
#include <numeric>

#include "csdsynth/simulate.hpp"

namespace csdsynth {

namespace {

constexpr double kPrune = 1e-30;

}  // namespace

SparseState::SparseState(std::size_t n_qubits, const std::vector<bool> &basis)
    : n_(n_qubits), words_(std::max<std::size_t>(1, (n_qubits + 63) / 64)) {
  if (basis.size() != n_qubits) {
    throw DimensionMismatch("basis state has the wrong width");
  }
  keys_.assign(words_, 0);
  for (std::size_t q = 0; q < n_qubits; ++q) {
    if (basis[q]) keys_[q / 64] |= std::uint64_t{1} << (q % 64);
  }
  amp_.push_back(1.0);
}

void SparseState::branch(Qubit target, std::int64_t control, const cd m[4]) {
  const std::size_t count = amp_.size();
  std::vector<std::uint64_t> keys;
  std::vector<cd> amps;
  keys.reserve(2 * count * words_);
  amps.reserve(2 * count);
  for (std::size_t e = 0; e < count; ++e) {
    const std::uint64_t *k = key(e);
    if (control >= 0 && !bit(e, static_cast<std::size_t>(control))) {
      keys.insert(keys.end(), k, k + words_);
      amps.push_back(amp_[e]);
      continue;
    }
    const unsigned b = bit(e, target);
    for (unsigned out = 0; out < 2; ++out) {
      cd a = m[2 * out + b] * amp_[e];
      if (std::norm(a) < kPrune) continue;
      std::size_t base = keys.size();
      keys.insert(keys.end(), k, k + words_);
      std::uint64_t &w = keys[base + target / 64];
      const std::uint64_t mask = std::uint64_t{1} << (target % 64);
      w = out ? (w | mask) : (w & ~mask);
      amps.push_back(a);
    }
  }
  // Merge equal keys.
  std::vector<std::size_t> idx(amps.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(
        keys.begin() + a * words_, keys.begin() + (a + 1) * words_,
        keys.begin() + b * words_, keys.begin() + (b + 1) * words_);
  };
  std::sort(idx.begin(), idx.end(), less);
  keys_.clear();
  amp_.clear();
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    cd sum = 0.0;
    while (j < idx.size() &&
           std::equal(keys.begin() + idx[i] * words_,
                      keys.begin() + (idx[i] + 1) * words_,
                      keys.begin() + idx[j] * words_)) {
      sum += amps[idx[j]];
      ++j;
    }
    if (std::norm(sum) >= kPrune) {
      keys_.insert(keys_.end(), keys.begin() + idx[i] * words_,
                   keys.begin() + (idx[i] + 1) * words_);
      amp_.push_back(sum);
    }
    i = j;
  }
}

void SparseState::apply(const Gate &g) {
  const unsigned ar = g.arity();
  for (unsigned i = 0; i < ar; ++i) {
    if (g.q[i] >= n_) throw InvalidInput("gate qubit out of range");
  }
  const std::size_t count = amp_.size();
  const Qubit t = g.target();
  const cd i1(0, 1);
  switch (g.kind) {
    case GateKind::X:
      for (std::size_t e = 0; e < count; ++e) flip(e, t);
      return;
    case GateKind::CX:
      for (std::size_t e = 0; e < count; ++e) {
        if (bit(e, g.q[0])) flip(e, t);
      }
      return;
    case GateKind::CCX:
      for (std::size_t e = 0; e < count; ++e) {
        if (bit(e, g.q[0]) && bit(e, g.q[1])) flip(e, t);
      }
      return;
    case GateKind::SWAP:
      for (std::size_t e = 0; e < count; ++e) {
        if (bit(e, g.q[0]) != bit(e, g.q[1])) {
          flip(e, g.q[0]);
          flip(e, g.q[1]);
        }
      }
      return;
    case GateKind::Y:
      for (std::size_t e = 0; e < count; ++e) {
        amp_[e] *= bit(e, t) ? -i1 : i1;
        flip(e, t);
      }
      return;
    case GateKind::H: {
      static const cd h[4] = {M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2};
      branch(t, -1, h);
      return;
    }
    case GateKind::CH: {
      static const cd h[4] = {M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2};
      branch(t, g.q[0], h);
      return;
    }
    default:
      break;
  }
  // Diagonal kinds.
  cd phase;
  switch (g.kind) {
    case GateKind::S: phase = i1; break;
    case GateKind::Sdg: phase = -i1; break;
    case GateKind::T:
    case GateKind::CT: phase = std::polar(1.0, M_PI / 4); break;
    case GateKind::Tdg: phase = std::polar(1.0, -M_PI / 4); break;
    default: phase = -1.0; break;  // Z, CZ
  }
  const bool controlled = ar == 2;
  for (std::size_t e = 0; e < count; ++e) {
    if (controlled && !bit(e, g.q[0])) continue;
    if (bit(e, t)) amp_[e] *= phase;
  }
}

void SparseState::apply(const Circuit &c) {
  if (c.num_qubits() > n_) throw InvalidInput("circuit wider than the state");
  for (const Gate &g : c.gates()) apply(g);
}

}  // namespace csdsynth
