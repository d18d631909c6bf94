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

#include "csdsynth/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "csdsynth/csd.hpp"

namespace csdsynth {

namespace {

struct Piece {
  std::string name;
  BlockSynthesis synth;
};

void check_eps(double eps) {
  if (!(eps > 0) || !std::isfinite(eps)) {
    throw InvalidInput("eps must be a positive finite number",
                       {{"eps", std::to_string(eps)}});
  }
}

}  // namespace

const char *strategy_name(Strategy s) {
  return s == Strategy::Grouped ? "grouped" : "naive";
}

Strategy strategy_from_name(const std::string &name) {
  if (name == "grouped") return Strategy::Grouped;
  if (name == "naive") return Strategy::Naive;
  throw InvalidInput("unknown strategy", {{"strategy", name}});
}

double length_parameter(unsigned n, double eps) {
  check_eps(eps);
  return static_cast<double>(n) + std::log2(1.0 / eps);
}

unsigned choose_k(unsigned n, double eps) {
  if (n < 2) throw InvalidInput("choose_k needs n >= 2");
  const double l = length_parameter(n, eps);
  if (l >= std::ldexp(1.0, static_cast<int>(n))) return 1;
  const double raw = std::floor((n - std::log2(l)) / 3.0);
  const double k = std::clamp(raw, 1.0, static_cast<double>(n - 1));
  return static_cast<unsigned>(k);
}

double error_budget(unsigned n, unsigned k, double eps) {
  check_eps(eps);
  if (k > n) throw InvalidInput("k exceeds n");
  return eps * std::ldexp(1.0, -static_cast<int>(n - k)) / 2.0;
}

std::uint64_t piece_count(unsigned n, unsigned k) {
  return 2 * (std::uint64_t{1} << (n - k)) - 1;
}

PredictedCosts predict_costs(unsigned n, unsigned k, double eps) {
  const double l = length_parameter(n, eps);
  const double nd = n, kd = k;
  PredictedCosts p;
  p.ancilla_leading = std::exp2((nd + kd) / 2) * std::sqrt(l);
  p.t_leading = std::exp2((3 * nd - kd) / 2) * std::sqrt(l);
  p.ancilla_model = p.ancilla_leading + std::exp2(2 * kd) * l;
  p.t_model = std::exp2(nd - kd) * p.ancilla_model;
  return p;
}

PredictedCosts predict_naive_costs(unsigned n, double eps) {
  const double l = length_parameter(n, eps);
  const double dim = std::exp2(static_cast<double>(n));
  PredictedCosts p;
  p.ancilla_leading = std::sqrt(dim * l);
  p.t_leading = dim * p.ancilla_leading;
  p.ancilla_model = p.ancilla_leading + l;
  p.t_model = dim * p.ancilla_model;
  return p;
}

CompileResult compile(const UnitaryMatrix &u, const CompileConfig &cfg,
                      const WordSearcher &searcher) {
  check_eps(cfg.eps);
  const unsigned n = u.num_qubits();
  if (n < 2) {
    throw InvalidInput("compile needs at least two qubits",
                       {{"n", std::to_string(n)}});
  }
  if (n > 12) {
    throw ResourceLimit("compile supports at most 12 qubits",
                        {{"n", std::to_string(n)}});
  }
  CompileResult res;
  res.strategy = cfg.strategy;
  res.backend = cfg.oracle_backend;
  res.eps = cfg.eps;
  res.seed = cfg.seed;
  if (cfg.k && (*cfg.k < 1 || *cfg.k > n - 1)) {
    throw InvalidInput("k must satisfy 1 <= k <= n-1",
                       {{"k", std::to_string(*cfg.k)},
                        {"n", std::to_string(n)}});
  }

  McuOptions opts;
  opts.backend = cfg.oracle_backend;
  opts.throw_on_overrun = false;

  const std::vector<MultiControlledUnitary> mcus = recursive_csd(u);
  std::vector<Piece> pieces;  // matrix order
  if (cfg.strategy == Strategy::Grouped) {
    res.k = cfg.k ? *cfg.k : choose_k(n, cfg.eps);
    res.delta = error_budget(n, res.k, cfg.eps);
    res.predicted = predict_costs(n, res.k, cfg.eps);
    BlockGrouping g = group_blocks(mcus, res.k);
    const std::size_t step = std::size_t{1} << res.k;
    for (std::size_t j = 0; j < g.W.size(); ++j) {
      pieces.push_back({"W" + std::to_string(j),
                        synthesize_mcu_k(g.W[j], res.delta, searcher, opts)});
      if (j < g.U.size()) {
        pieces.push_back(
            {"U" + std::to_string((j + 1) * step),
             synthesize_mcu_naive(g.U[j], res.delta, searcher, opts)});
      }
    }
  } else {
    res.k = 0;
    res.delta = cfg.eps * std::ldexp(1.0, -static_cast<int>(n));
    res.predicted = predict_naive_costs(n, cfg.eps);
    for (std::size_t i = 0; i < mcus.size(); ++i) {
      pieces.push_back(
          {"U" + std::to_string(i + 1),
           synthesize_mcu_naive(mcus[i], res.delta, searcher, opts)});
    }
  }

  std::size_t anc = 0;
  for (const Piece &p : pieces) {
    res.error_bound += p.synth.error_bound;
    anc = std::max(anc, p.synth.circuit.n_ancilla());
  }
  if (res.error_bound > cfg.eps) {
    throw UnreachablePrecision(
        "word table cannot reach the requested precision", cfg.eps,
        res.error_bound);
  }

  // The last matrix factor acts first.
  res.circuit = Circuit(n, anc);
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    res.circuit.append_gates(it->synth.circuit.gates());
  }
  res.report.t_count = t_count(res.circuit);
  res.report.ancilla_count = ancilla_count(res.circuit);
  res.report.clifford_count = clifford_count(res.circuit);
  for (const Piece &p : pieces) {
    res.report.stages.push_back({p.name, t_count(p.synth.circuit),
                                 ancilla_count(p.synth.circuit)});
  }
  return res;
}

CompileResult compile(const UnitaryMatrix &u, const CompileConfig &cfg) {
  const WordTable table = load_or_build_word_table(cfg.ht_table_depth);
  const WordSearcher searcher(table, cfg.pair_prefix_t);
  return compile(u, cfg, searcher);
}

std::string report_to_json(const CompileResult &r) {
  nlohmann::ordered_json j;
  j["t_count"] = r.report.t_count;
  j["ancilla_count"] = r.report.ancilla_count;
  j["clifford_count"] = r.report.clifford_count;
  nlohmann::ordered_json stages = nlohmann::ordered_json::array();
  for (const StageCost &s : r.report.stages) {
    stages.push_back({{"name", s.name}, {"t", s.t}, {"ancilla", s.ancilla}});
  }
  j["stages"] = std::move(stages);
  j["predicted"] = {{"t_model", r.predicted.t_model},
                    {"ancilla_model", r.predicted.ancilla_model}};
  j["delta"] = r.delta;
  j["k"] = r.k;
  j["strategy"] = strategy_name(r.strategy);
  j["backend"] = oracle_backend_name(r.backend);
  j["eps"] = r.eps;
  j["error_bound"] = r.error_bound;
  j["seed"] = r.seed;
  return j.dump(2) + "\n";
}

}  // namespace csdsynth
