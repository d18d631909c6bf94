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
#include <optional>
#include <string>

#include "csdsynth/block_synth.hpp"
#include "csdsynth/circuit.hpp"
#include "csdsynth/matrix.hpp"

namespace csdsynth {

enum class Strategy { Grouped, Naive };

const char *strategy_name(Strategy s);
Strategy strategy_from_name(const std::string &name);

struct CompileConfig {
  double eps = 0.1;
  std::optional<unsigned> k;
  Strategy strategy = Strategy::Grouped;
  OracleBackend oracle_backend = OracleBackend::Naive;
  unsigned ht_table_depth = 16;
  /** Recorded in the report. Compilation itself is deterministic. */
  std::uint64_t seed = 0;
  /** Prefix T-count of the pair search; negative picks the default. */
  int pair_prefix_t = -1;
};

/** L = n + log2(1/eps). */
double length_parameter(unsigned n, double eps);

/** max(1, floor((n - log2 L)/3)), 1 when L >= 2^n, at most n-1. */
unsigned choose_k(unsigned n, double eps);

/** eps 2^{-(n-k)} / 2. */
double error_budget(unsigned n, unsigned k, double eps);

/** Piece count 2 * 2^{n-k} - 1 of the grouped decomposition. */
std::uint64_t piece_count(unsigned n, unsigned k);

struct PredictedCosts {
  double t_model = 0;
  double ancilla_model = 0;
  /** Leading terms 2^{(3n-k)/2} sqrt(L) and 2^{(n+k)/2} sqrt(L). */
  double t_leading = 0;
  double ancilla_leading = 0;
};

/** ancilla = 2^{(n+k)/2} sqrt(L) + 4^k L, T = 2^{n-k} ancilla. */
PredictedCosts predict_costs(unsigned n, unsigned k, double eps);

/** Whole-unitary baseline: ancilla = sqrt(2^n L) + L, T = 2^n ancilla. */
PredictedCosts predict_naive_costs(unsigned n, double eps);

struct CompileResult {
  Circuit circuit;
  CostReport report;
  PredictedCosts predicted;
  /** Per-piece budget. */
  double delta = 0;
  unsigned k = 0;
  Strategy strategy = Strategy::Grouped;
  OracleBackend backend = OracleBackend::Naive;
  /** Sum of the achieved piece errors; at most eps. */
  double error_bound = 0;
  double eps = 0;
  std::uint64_t seed = 0;
};

/**
 * Grouped: U = W_0 U_{2^k} W_1 ... W_{2^{n-k}-1}, blocks W_j through
 * synthesize_mcu_k and the interleaved factors through
 * synthesize_mcu_naive, each aimed at delta. Naive: every factor of the
 * recursive CSD through synthesize_mcu_naive at eps 2^{-n}. Pieces share
 * ancillae. Throws UnreachablePrecision when the summed piece errors
 * exceed eps.
 */
CompileResult compile(const UnitaryMatrix &u, const CompileConfig &cfg,
                      const WordSearcher &searcher);
/** Loads or builds the word table for cfg.ht_table_depth. */
CompileResult compile(const UnitaryMatrix &u, const CompileConfig &cfg);

/** Report JSON: t_count, ancilla_count, clifford_count, stages,
 * predicted, delta, k, strategy, backend and the error bound. */
std::string report_to_json(const CompileResult &r);

}  // namespace csdsynth
