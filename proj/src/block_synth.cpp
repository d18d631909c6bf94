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

#include "csdsynth/block_synth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace csdsynth {

namespace {

constexpr double kIdentityTol = 1e-12;
constexpr double kDetTol = 1e-12;

bool near_identity(const Matrix &m) {
  return (m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <=
         kIdentityTol;
}

bool all_identity(const std::vector<Matrix> &table) {
  return std::all_of(table.begin(), table.end(), near_identity);
}

std::size_t table_vars(std::size_t size) {
  if (size == 0 || !std::has_single_bit(size)) {
    throw DimensionMismatch("factor table size is not a power of two",
                            {{"size", std::to_string(size)}});
  }
  return static_cast<std::size_t>(std::countr_zero(size));
}

// Pads every word to the common length and factors the exponent functions.
void finalize_plan(BlockPlan &plan) {
  const unsigned n = plan.n_vars;
  const unsigned kappa = plan.kappa();
  plan.L = 0;
  for (const auto &ws : plan.words) {
    for (const HTWord &w : ws) plan.L = std::max(plan.L, w.slots());
  }
  for (auto &ws : plan.words) {
    for (HTWord &w : ws) w = w.padded(plan.L);
  }
  const std::vector<unsigned> order = plan.anf_order();
  const std::size_t rows = std::size_t{1} << n;
  // y (factored order) -> x (natural order).
  std::vector<std::uint64_t> natural(rows);
  for (std::uint64_t y = 0; y < rows; ++y) {
    std::uint64_t x = 0;
    for (unsigned p = 0; p < n; ++p) {
      if ((y >> (n - 1 - p)) & 1u) x |= std::uint64_t{1} << (n - 1 - order[p]);
    }
    natural[y] = x;
  }
  plan.factored.assign(plan.m(), {});
  for (std::size_t i = 0; i < plan.m(); ++i) {
    plan.factored[i].resize(2 * plan.L);
    for (unsigned j = 0; j < 2 * plan.L; ++j) {
      TruthTable t(n, 1);
      for (std::uint64_t y = 0; y < rows; ++y) {
        if (plan.f(i, j, natural[y])) t.set(y, 0, true);
      }
      plan.factored[i][j] = factor_anf(anf_from_truth_table(t), kappa);
    }
  }
}

void check_target_set(const std::vector<unsigned> &target_vars,
                      unsigned n_vars) {
  if (target_vars.empty()) throw InvalidInput("empty target set");
  for (std::size_t a = 0; a < target_vars.size(); ++a) {
    if (target_vars[a] >= n_vars) {
      throw InvalidInput("target variable out of range",
                         {{"var", std::to_string(target_vars[a])}});
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (target_vars[a] == target_vars[b]) {
        throw InvalidInput("repeated target variable");
      }
    }
  }
}

// A single-target factor over the data qubits, before the phase split.
struct LiftedFactor {
  unsigned target;
  std::vector<Matrix> table;
};

BlockSynthesis synthesize_lifted(unsigned n,
                                 const std::vector<LiftedFactor> &lifted,
                                 const std::vector<unsigned> &data_targets,
                                 double eps, const WordSearcher &searcher,
                                 const McuOptions &opts) {
  if (!(eps > 0)) throw InvalidInput("eps must be positive");
  std::vector<const LiftedFactor *> active;
  for (const LiftedFactor &f : lifted) {
    if (!all_identity(f.table)) active.push_back(&f);
  }
  BlockSynthesis out;
  if (active.empty()) {
    out.circuit = Circuit(n, 0);
    return out;
  }
  const unsigned nv = n + 1;
  const unsigned anc = n;
  BlockPlan plan;
  plan.n_vars = nv;
  plan.target_vars = data_targets;
  plan.target_vars.push_back(anc);
  check_target_set(plan.target_vars, nv);
  const double per_word = eps / static_cast<double>(2 * active.size());

  for (const LiftedFactor *f : active) {
    const std::size_t rows = f->table.size();
    std::vector<HTWord> r_words(2 * rows);
    std::vector<double> psi(rows);
    double r_err = 0;
    for (std::size_t l = 0; l < rows; ++l) {
      PhasedSu2 ps = split_phase(f->table[l]);
      WordApprox w = searcher.free(su2_to_quaternion(ps.su2), per_word);
      r_err = std::max(r_err, w.distance);
      psi[l] = ps.theta - w.phase;
      // The ancilla is the last variable, so it is the low bit.
      r_words[2 * l] = w.word;
      r_words[2 * l + 1] = w.word;
    }
    std::vector<HTWord> col_words(rows);
    double d_err = 0;
    for (std::size_t l = 0; l < rows; ++l) {
      WordApprox w = searcher.column(psi[l], per_word);
      d_err = std::max(d_err, w.distance);
      col_words[l] = w.word;
    }
    std::vector<HTWord> d_words(std::size_t{1} << n);
    for (std::size_t x = 0; x < d_words.size(); ++x) {
      d_words[x] = col_words[drop_variable(x, n, f->target)];
    }
    plan.factor_targets.push_back(f->target);
    plan.words.push_back(std::move(r_words));
    plan.factor_error.push_back(r_err);
    plan.factor_targets.push_back(anc);
    plan.words.push_back(std::move(d_words));
    plan.factor_error.push_back(d_err);
  }
  finalize_plan(plan);
  out.error_bound = plan.error_bound();
  out.factors = plan.m();
  if (opts.throw_on_overrun && out.error_bound > eps) {
    throw UnreachablePrecision(
        "word table cannot reach the requested block precision", eps,
        out.error_bound);
  }
  out.circuit = emit_block_circuit(plan, opts.backend, n, &out.stats);
  return out;
}

}  // namespace

std::size_t drop_variable(std::size_t x, unsigned n_vars, unsigned var) {
  const unsigned p = n_vars - 1 - var;
  const std::size_t low = x & ((std::size_t{1} << p) - 1);
  return ((x >> (p + 1)) << p) | low;
}

double BlockPlan::error_bound() const {
  double s = 0;
  for (double e : factor_error) s += e;
  return s;
}

std::vector<unsigned> BlockPlan::anf_order() const {
  std::vector<unsigned> order = target_vars;
  for (unsigned v = 0; v < n_vars; ++v) {
    if (std::find(target_vars.begin(), target_vars.end(), v) ==
        target_vars.end()) {
      order.push_back(v);
    }
  }
  return order;
}

bool BlockPlan::f(std::size_t i, std::size_t j, std::uint64_t x) const {
  return words[i][drop_variable(x, n_vars, factor_targets[i])].exponent(j) !=
         0;
}

BlockPlan plan_block(const std::vector<ControlledSu2Factor> &factors,
                     unsigned kappa, double eps,
                     const WordSearcher &searcher) {
  if (factors.empty()) throw InvalidInput("plan_block: no factors");
  const unsigned n =
      static_cast<unsigned>(table_vars(factors.front().table.size())) + 1;
  if (kappa < 1 || kappa > n) {
    throw InvalidInput("plan_block: kappa out of range",
                       {{"kappa", std::to_string(kappa)}});
  }
  std::vector<unsigned> targets;
  for (unsigned v = n - kappa; v < n; ++v) targets.push_back(v);
  return plan_block(factors, targets, eps, searcher);
}

BlockPlan plan_block(const std::vector<ControlledSu2Factor> &factors,
                     const std::vector<unsigned> &target_vars, double eps,
                     const WordSearcher &searcher) {
  if (factors.empty()) throw InvalidInput("plan_block: no factors");
  if (!(eps > 0)) throw InvalidInput("eps must be positive");
  const std::size_t rows = factors.front().table.size();
  const unsigned n = static_cast<unsigned>(table_vars(rows)) + 1;
  check_target_set(target_vars, n);
  BlockPlan plan;
  plan.n_vars = n;
  plan.target_vars = target_vars;
  const double per_word = eps / static_cast<double>(factors.size());

  for (const ControlledSu2Factor &fac : factors) {
    if (fac.table.size() != rows) {
      throw DimensionMismatch("factor tables differ in size");
    }
    if (std::find(target_vars.begin(), target_vars.end(), fac.target) ==
        target_vars.end()) {
      throw InvalidInput("factor target outside the target set",
                         {{"target", std::to_string(fac.target)}});
    }
    std::vector<Quaternion> qs;
    for (const Matrix &r : fac.table) {
      if (r.rows() != 2 || r.cols() != 2) {
        throw DimensionMismatch("factor entries must be 2x2");
      }
      if (std::abs(r.determinant() - 1.0) > kDetTol) {
        throw InvalidInput("factor entry is not in SU(2)");
      }
      qs.push_back(su2_to_quaternion(r));
    }
    plan.factor_targets.push_back(fac.target);
    if (all_identity(fac.table)) {
      plan.words.emplace_back(rows);
      plan.factor_error.push_back(0);
      continue;
    }
    // One phase e^{i m pi/8} for the whole factor keeps the relative
    // phases between control values intact.
    std::vector<HTWord> best;
    double best_err = INFINITY;
    for (unsigned m = 0; m < 16 && best_err > per_word; ++m) {
      std::vector<HTWord> ws;
      double worst = 0;
      for (const Quaternion &q : qs) {
        WordApprox w = searcher.locked(q, m, per_word);
        worst = std::max(worst, w.distance);
        if (worst >= best_err) break;
        ws.push_back(std::move(w.word));
      }
      if (worst < best_err) {
        best_err = worst;
        best = std::move(ws);
      }
    }
    plan.words.push_back(std::move(best));
    plan.factor_error.push_back(best_err);
  }
  const double worst =
      *std::max_element(plan.factor_error.begin(), plan.factor_error.end());
  if (worst > per_word) {
    throw UnreachablePrecision(
        "word table cannot reach the per-factor precision", eps,
        worst * static_cast<double>(factors.size()));
  }
  finalize_plan(plan);
  return plan;
}

Circuit emit_block_circuit(const BlockPlan &plan, OracleBackend backend,
                           unsigned n_data, BlockStats *stats) {
  const unsigned n = plan.n_vars;
  const unsigned kappa = plan.kappa();
  if (n_data > n) throw InvalidInput("n_data exceeds the plan width");
  Circuit c(n_data, n - n_data);
  BlockStats st;

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < plan.m(); ++i) {
    bool any = false;
    for (const HTWord &w : plan.words[i]) {
      for (std::uint8_t e : w.exponents()) any = any || e != 0;
    }
    if (any) active.push_back(i);
  }
  if (active.empty() || plan.L == 0) {
    if (stats) *stats = st;
    return c;
  }

  const std::vector<unsigned> order = plan.anf_order();
  const unsigned nc = n - kappa;
  const unsigned slots = 2 * plan.L;
  const std::size_t nb = std::size_t{1} << (kappa - 1);
  const std::size_t a_bits = active.size() * slots * nb;
  const std::size_t b_bits = kappa >= 3 ? nb - kappa : 0;

  const Qubit a0 = c.add_ancillas(a_bits);
  const Qubit f0 = c.add_ancillas(slots);
  const Qubit b0 = c.add_ancillas(b_bits);
  auto a_index = [&](std::size_t ai, unsigned j, std::size_t bp) {
    return static_cast<Qubit>(a0 + (ai * slots + j) * nb + bp);
  };

  // Non-target positions (in factored order) for each active factor.
  std::vector<std::vector<unsigned>> nontarget(active.size());
  for (std::size_t ai = 0; ai < active.size(); ++ai) {
    const unsigned tgt = plan.factor_targets[active[ai]];
    for (unsigned p = 0; p < kappa; ++p) {
      if (order[p] != tgt) nontarget[ai].push_back(p);
    }
    if (nontarget[ai].size() != kappa - 1) {
      throw InvalidInput("factor target outside the target set");
    }
  }

  // g-oracle truth table over the pure controls.
  TruthTable g(nc, static_cast<unsigned>(a_bits));
  for (std::size_t ai = 0; ai < active.size(); ++ai) {
    const std::size_t i = active[ai];
    for (unsigned j = 0; j < slots; ++j) {
      for (const auto &[b, poly] : plan.factored[i][j].terms) {
        std::size_t bp = 0;
        std::uint64_t rest = b;
        for (unsigned q = 0; q < kappa - 1; ++q) {
          const std::uint64_t bit = std::uint64_t{1}
                                    << (kappa - 1 - nontarget[ai][q]);
          if (b & bit) bp |= std::size_t{1} << (kappa - 2 - q);
          rest &= ~bit;
        }
        if (rest != 0) {
          throw NumericalError("control function depends on its own target");
        }
        const unsigned col = a_index(ai, j, bp) - a0;
        for (std::uint64_t y = 0; y < g.rows(); ++y) {
          if (poly.evaluate(y)) g.set(y, col, true);
        }
      }
    }
  }
  Circuit oracle = synthesize_oracle(g, backend);
  std::vector<Qubit> map(oracle.num_qubits());
  for (unsigned v = 0; v < nc; ++v) map[v] = order[kappa + v];
  for (std::size_t r = 0; r < a_bits; ++r) {
    map[nc + r] = a0 + static_cast<Qubit>(r);
  }
  const std::size_t scratch = oracle.num_qubits() - nc - a_bits;
  const Qubit s0 = c.add_ancillas(scratch);
  for (std::size_t s = 0; s < scratch; ++s) {
    map[nc + a_bits + s] = s0 + static_cast<Qubit>(s);
  }

  // Monomial register of each mask over the kappa-1 non-target variables.
  std::map<std::size_t, Qubit> mono_reg;
  const auto monos = kappa >= 3 ? monomial_order(kappa - 1)
                                : std::vector<std::vector<unsigned>>{};
  for (std::size_t r = 0; r < monos.size(); ++r) {
    std::size_t mask = 0;
    for (unsigned q : monos[r]) mask |= std::size_t{1} << (kappa - 2 - q);
    mono_reg[mask] = b0 + static_cast<Qubit>(r);
  }
  std::vector<Qubit> b_reg(b_bits);
  for (std::size_t r = 0; r < b_bits; ++r) b_reg[r] = b0 + static_cast<Qubit>(r);

  const std::size_t g_begin = c.size();
  c.append_mapped(oracle, map);
  const std::size_t g_end = c.size();

  for (std::size_t ai = active.size(); ai-- > 0;) {
    const std::size_t i = active[ai];
    std::vector<Qubit> vars;
    for (unsigned p : nontarget[ai]) vars.push_back(order[p]);
    const std::size_t begin = c.size();
    if (kappa >= 3) append_monomials(c, vars, b_reg);
    const std::size_t asm_begin = c.size();
    for (unsigned j = 0; j < slots; ++j) {
      for (std::size_t bp = 0; bp < nb; ++bp) {
        const Qubit a = a_index(ai, j, bp);
        if (bp == 0) {
          c.cx(a, f0 + j);
        } else if (std::has_single_bit(bp)) {
          const unsigned q = kappa - 2 - std::countr_zero(bp);
          c.ccx(vars[q], a, f0 + j);
        } else {
          c.ccx(mono_reg.at(bp), a, f0 + j);
        }
      }
    }
    const std::size_t end = c.size();
    const Qubit tq = plan.factor_targets[i];
    for (unsigned j = slots; j >= 1; --j) {
      if (j % 2 == 0) c.ct(f0 + j - 1, tq);
      else c.ch(f0 + j - 1, tq);
    }
    c.append_gates(inverse_gates(c.gates(), begin, end));
    st.assembly_gates.push_back(2 * (end - asm_begin));
  }
  c.append_gates(inverse_gates(c.gates(), g_begin, g_end));

  std::reverse(st.assembly_gates.begin(), st.assembly_gates.end());
  st.a_bits = a_bits;
  st.b_bits = b_bits;
  st.f_bits = slots;
  st.oracle_scratch = scratch;
  st.emitted_factors = active.size();
  if (stats) *stats = st;
  return c;
}

BlockSynthesis synthesize_mcu_k(const MultiControlledUnitary &w, double eps,
                                const WordSearcher &searcher,
                                const McuOptions &opts) {
  const unsigned n = w.num_qubits();
  const unsigned k = static_cast<unsigned>(w.targets().size());
  if (k < 1 || k > n) throw InvalidInput("synthesize_mcu_k: bad target count");
  for (unsigned t = 0; t < k; ++t) {
    if (w.targets()[t] != n - k + t) {
      throw InvalidInput("synthesize_mcu_k: targets must be the last k qubits");
    }
  }
  const std::size_t blocks = std::size_t{1} << (n - k);
  const std::size_t inner = std::size_t{1} << (k - 1);
  std::vector<LiftedFactor> lifted;
  for (std::size_t x = 0; x < blocks; ++x) {
    std::vector<MultiControlledUnitary> parts =
        recursive_csd(UnitaryMatrix(w.entry(x)));
    if (lifted.empty()) {
      for (const auto &p : parts) {
        lifted.push_back({n - k + p.target(),
                          std::vector<Matrix>(blocks * inner)});
      }
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t y = 0; y < inner; ++y) {
        lifted[i].table[x * inner + y] = parts[i].entry(y);
      }
    }
  }
  std::vector<unsigned> targets(w.targets().begin(), w.targets().end());
  return synthesize_lifted(n, lifted, targets, eps, searcher, opts);
}

BlockSynthesis synthesize_mcu_naive(const MultiControlledUnitary &u,
                                    double eps, const WordSearcher &searcher,
                                    const McuOptions &opts) {
  if (u.targets().size() != 1) {
    throw InvalidInput("synthesize_mcu_naive: expects one target");
  }
  std::vector<LiftedFactor> lifted{{u.target(), u.table()}};
  return synthesize_lifted(u.num_qubits(), lifted, {u.target()}, eps,
                           searcher, opts);
}

Matrix lifted_phase_block(double theta) {
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  const cd e = std::polar(1.0, theta);
  return tensor(e * identity_matrix(2), p0) +
         tensor(std::conj(e) * identity_matrix(2), p1);
}

}  // namespace csdsynth
