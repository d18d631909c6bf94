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

#include <string>
#include <vector>

#include "csdsynth/matrix.hpp"

namespace csdsynth {

/**
 * U = diag(V1, V2) [[C, S], [S, -C]] diag(W1, W2) with C = diag(cos theta)
 * and S = diag(sin theta), theta ascending in [0, pi/2].
 */
struct CsdTriple {
  Matrix V1, V2, W1, W2;
  std::vector<double> thetas;

  Matrix middle() const;
  Matrix reconstruct() const;
};

/**
 * Block-diagonal operator sum_x |x><x| (x) V_x.
 *
 * `targets` are 0-based qubit indices (qubit 0 is the most significant
 * bit); the controls are the remaining qubits in ascending order, and x
 * reads them most significant first. Inside V_x the first target is the
 * most significant bit.
 */
class MultiControlledUnitary {
 public:
  MultiControlledUnitary() = default;
  MultiControlledUnitary(unsigned n, std::vector<unsigned> targets,
                         std::vector<Matrix> table);

  unsigned num_qubits() const { return n_; }
  const std::vector<unsigned> &targets() const { return targets_; }
  std::vector<unsigned> controls() const;
  const std::vector<Matrix> &table() const { return table_; }
  const Matrix &entry(std::size_t x) const { return table_[x]; }
  /** Single-target convenience. */
  unsigned target() const { return targets_.front(); }

  /** Matrix element between full basis indices. */
  cd element(std::size_t row, std::size_t col) const;
  Matrix to_matrix() const;
  /** Action on the last k qubits for a fixed value of the first n-k. */
  Matrix restrict_to_suffix(std::size_t prefix, unsigned k) const;
  bool is_identity(double tol = 1e-12) const;

 private:
  unsigned n_ = 0;
  std::vector<unsigned> targets_;
  std::vector<Matrix> table_;
};

/** t_n(i): 1-based position of the lowest set bit of i, counting the most
 * significant of n bits as 1. */
unsigned rightmost_one(unsigned n, std::uint64_t i);

CsdTriple cs_decompose(const UnitaryMatrix &u);

/** U = U_1 U_2 ... U_{2^n - 1}; element i-1 targets qubit t_n(i) - 1. */
std::vector<MultiControlledUnitary> recursive_csd(const UnitaryMatrix &u);

struct BlockGrouping {
  /** W_0 .. W_{2^{n-k}-1}, each targeting the last k qubits. */
  std::vector<MultiControlledUnitary> W;
  /** U_{j 2^k} for j = 1 .. 2^{n-k}-1, stored at index j-1. */
  std::vector<MultiControlledUnitary> U;
};

/** U = W_0 U_{2^k} W_1 U_{2^{k+1}} ... W_{2^{n-k}-1}. */
BlockGrouping group_blocks(const std::vector<MultiControlledUnitary> &mcus,
                           unsigned k);

/** Ordered product of the MCU matrices. */
Matrix product_of(const std::vector<MultiControlledUnitary> &mcus);

/** Debug dump: targets and table entries of each MCU. */
std::string mcus_to_json(const std::vector<MultiControlledUnitary> &mcus);

}  // namespace csdsynth
