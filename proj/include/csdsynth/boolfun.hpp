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
#include <map>
#include <string>
#include <vector>

#include "csdsynth/circuit.hpp"

namespace csdsynth {

// Variable i of an n-variable function is bit (n - 1 - i) of the input
// index, so x_1 is the most significant bit. A monomial is the mask of its
// variables in the same layout.

constexpr unsigned kMaxTruthTableVars = 24;

/** Boolean function {0,1}^n -> {0,1}^r stored one bit column per output. */
class TruthTable {
 public:
  TruthTable() = default;
  TruthTable(unsigned n_vars, unsigned r_out);

  unsigned n_vars() const { return n_vars_; }
  unsigned r_out() const { return r_out_; }
  std::size_t rows() const { return std::size_t{1} << n_vars_; }

  bool get(std::size_t x, unsigned out) const {
    return (cols_[out][x >> 6] >> (x & 63)) & 1u;
  }
  void set(std::size_t x, unsigned out, bool v);
  /** True if output `out` is identically zero. */
  bool output_is_zero(unsigned out) const;
  /** Single-output table of output `out`. */
  TruthTable output(unsigned out) const;

  bool operator==(const TruthTable &o) const;

 private:
  unsigned n_vars_ = 0;
  unsigned r_out_ = 0;
  std::vector<std::vector<std::uint64_t>> cols_;
};

TruthTable random_truth_table(unsigned n_vars, unsigned r_out,
                              std::uint64_t seed);

/**
 * Text format: "tt <n_vars> <r_out>" followed by 2^n_vars rows; row x is
 * f(x) in hex with output j at bit j.
 */
TruthTable parse_truth_table(const std::string &text);
std::string truth_table_to_text(const TruthTable &t);

class AnfPolynomial {
 public:
  AnfPolynomial() = default;
  AnfPolynomial(unsigned n_vars, std::vector<std::uint64_t> monomials);

  unsigned n_vars() const { return n_vars_; }
  /** Sorted, distinct monomial masks; 0 is the constant 1. */
  const std::vector<std::uint64_t> &monomials() const { return monomials_; }
  bool empty() const { return monomials_.empty(); }
  bool evaluate(std::uint64_t x) const;
  /** True if some monomial contains variable i. */
  bool depends_on(unsigned var) const;
  TruthTable to_truth_table() const;

  bool operator==(const AnfPolynomial &o) const {
    return n_vars_ == o.n_vars_ && monomials_ == o.monomials_;
  }

 private:
  unsigned n_vars_ = 0;
  std::vector<std::uint64_t> monomials_;
};

/** Moebius transform of a single-output table. */
AnfPolynomial anf_from_truth_table(const TruthTable &t);

/**
 * f(x) = XOR_b (x_1^{b_1} ... x_k^{b_k}) g_b(x_{k+1}, ..., x_n). Keys b are
 * k-bit masks in the variable layout above; g_b has n - k variables.
 */
struct FactoredAnf {
  unsigned n_vars = 0;
  unsigned k = 0;
  std::map<std::uint64_t, AnfPolynomial> terms;

  bool evaluate(std::uint64_t x) const;
};

FactoredAnf factor_anf(const AnfPolynomial &p, unsigned k);

/**
 * Monomials of degree >= 2 over n variables as variable-index lists,
 * ordered by degree and then lexicographically.
 */
std::vector<std::vector<unsigned>> monomial_order(unsigned n);

/**
 * Writes every monomial of degree >= 2 over `vars` into `outs` (ordered as
 * monomial_order), one CCX per monomial: the register of a monomial is the
 * AND of the register of its prefix and its last variable.
 */
void append_monomials(Circuit &c, const std::vector<Qubit> &vars,
                      const std::vector<Qubit> &outs);

/** n data qubits plus 2^n - n - 1 monomial ancillae. */
Circuit monomial_circuit(unsigned n);

enum class OracleBackend { Naive, SelectSwap };

const char *oracle_backend_name(OracleBackend b);
OracleBackend oracle_backend_from_name(const std::string &name);

/**
 * |x>|y>|0..0> -> |x>|y xor f(x)>|0..0>. Qubits 0..n_vars-1 hold x,
 * the next r_out hold y, scratch follows as ancillae.
 *
 * Naive: one multi-controlled X per ANF monomial (shared by all outputs
 * that contain it), realised with a CCX ladder on at most n_vars - 1
 * scratch qubits.
 *
 * SelectSwap: unary-iteration select over the high address bits writes
 * 2^s candidate r-bit words into a scratch register, a CSWAP network on
 * the s low bits moves the addressed word to the front, it is copied into
 * y and everything is uncomputed. s minimises the modelled T-count.
 */
Circuit synthesize_oracle(const TruthTable &t, OracleBackend backend);

/** Modelled select-swap T-count for a split with s swap bits. */
std::uint64_t select_swap_t_model(unsigned n_vars, unsigned r_out,
                                  unsigned s);
unsigned select_swap_split(unsigned n_vars, unsigned r_out);

}  // namespace csdsynth
