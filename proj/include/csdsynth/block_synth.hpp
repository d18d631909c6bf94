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

#include <vector>

#include "csdsynth/boolfun.hpp"
#include "csdsynth/circuit.hpp"
#include "csdsynth/csd.hpp"
#include "csdsynth/su2_words.hpp"

namespace csdsynth {

/**
 * sum_x |x><x| (x) [R_x] on variable `target` of an n-variable register.
 * `table` is indexed by the other n-1 variables in ascending order, the
 * lowest-numbered one most significant.
 */
struct ControlledSu2Factor {
  unsigned target = 0;
  std::vector<Matrix> table;
};

/** Index into a factor table for the full assignment x of n variables. */
std::size_t drop_variable(std::size_t x, unsigned n_vars, unsigned var);

/**
 * Words and control functions for a product U_1 ... U_m of factors whose
 * targets lie in a common target set.
 *
 * words[i][x] is the padded word of factor i for table index x. Exponent
 * j of those words, as a function of all n_vars variables, is f_{i,j};
 * factored[i][j] is its split at kappa with the variables reordered as
 * target_vars followed by the remaining variables ascending.
 */
struct BlockPlan {
  unsigned n_vars = 0;
  std::vector<unsigned> target_vars;
  std::vector<unsigned> factor_targets;
  /** Common slot count: every word has 2L exponents. */
  unsigned L = 0;
  std::vector<std::vector<HTWord>> words;
  /** max over x of the achieved word error, per factor. */
  std::vector<double> factor_error;
  std::vector<std::vector<FactoredAnf>> factored;

  std::size_t m() const { return words.size(); }
  unsigned kappa() const {
    return static_cast<unsigned>(target_vars.size());
  }
  /** Sum of factor errors: bound on the block's error. */
  double error_bound() const;
  /** Variables in factored order: target_vars then the rest. */
  std::vector<unsigned> anf_order() const;
  /** Word exponent j of factor i at full assignment x. */
  bool f(std::size_t i, std::size_t j, std::uint64_t x) const;
};

/**
 * Finds for every (i, x) a word within eps/m of R_{i,x} up to a phase
 * that is common to all x (so the block is correct up to one global
 * phase), and factors the exponent functions. The target set is the last
 * kappa variables, or `target_vars` when given.
 */
BlockPlan plan_block(const std::vector<ControlledSu2Factor> &factors,
                     unsigned kappa, double eps, const WordSearcher &searcher);
BlockPlan plan_block(const std::vector<ControlledSu2Factor> &factors,
                     const std::vector<unsigned> &target_vars, double eps,
                     const WordSearcher &searcher);

/** Register sizes and gate counts of an emitted block. */
struct BlockStats {
  std::size_t a_bits = 0;
  std::size_t b_bits = 0;
  std::size_t f_bits = 0;
  std::size_t oracle_scratch = 0;
  /** Step 3(b) gates (compute and uncompute) per emitted factor. */
  std::vector<std::size_t> assembly_gates;
  std::size_t emitted_factors = 0;
};

/**
 * Circuit over the plan's variables (the first n_data are data qubits,
 * the rest ancillae) followed by the registers A, f, B and the oracle
 * scratch. Factors whose words are all empty emit nothing.
 */
Circuit emit_block_circuit(const BlockPlan &plan, OracleBackend backend,
                           unsigned n_data, BlockStats *stats = nullptr);
inline Circuit emit_block_circuit(const BlockPlan &plan,
                                  OracleBackend backend) {
  return emit_block_circuit(plan, backend, plan.n_vars);
}

struct BlockSynthesis {
  Circuit circuit;
  /** Sum over factors of the achieved word errors. */
  double error_bound = 0;
  BlockStats stats;
  std::size_t factors = 0;
};

struct McuOptions {
  OracleBackend backend = OracleBackend::Naive;
  /** Throw UnreachablePrecision when error_bound exceeds eps. Otherwise
   * the result reports its bound and the caller decides. */
  bool throw_on_overrun = true;
};

/**
 * W targeting its last k qubits. Each V_x is split by recursive CSD into
 * 2^k - 1 single-target factors; each factor is written e^{i theta} R with
 * R in SU(2), and the phase is moved onto one extra ancilla (the last
 * variable) as diag(e^{i theta}, e^{-i theta}). The 2(2^k - 1) factors
 * share the target set {last k qubits, ancilla}.
 */
BlockSynthesis synthesize_mcu_k(const MultiControlledUnitary &w, double eps,
                                const WordSearcher &searcher,
                                const McuOptions &opts = {});

/** One single-target MCU with the same construction (target set of two). */
BlockSynthesis synthesize_mcu_naive(const MultiControlledUnitary &u,
                                    double eps, const WordSearcher &searcher,
                                    const McuOptions &opts = {});

/** The lifted phase identity on one qubit and one ancilla: returns the
 * 4x4 matrix diag(e^{it}, e^{it}) (x) |0><0| + diag(e^{-it}, e^{-it}) (x)
 * |1><1| with the target qubit first. */
Matrix lifted_phase_block(double theta);

}  // namespace csdsynth
