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
#include <bit>
#include <map>

#include "csdsynth/boolfun.hpp"

namespace csdsynth {

namespace {

constexpr std::uint64_t kCcxT = 7;

std::vector<Qubit> vars_of(std::uint64_t mono, unsigned n) {
  std::vector<Qubit> v;
  for (unsigned i = 0; i < n; ++i) {
    if ((mono >> (n - 1 - i)) & 1u) v.push_back(i);
  }
  return v;
}

// X on `target` controlled by all of `controls` (at least two), with a CCX
// ladder through scratch[0 .. size-3].
void mcx(Circuit &c, const std::vector<Qubit> &controls, Qubit target,
         const std::vector<Qubit> &scratch) {
  const std::size_t d = controls.size();
  if (d == 2) {
    c.ccx(controls[0], controls[1], target);
    return;
  }
  const std::size_t begin = c.size();
  c.ccx(controls[0], controls[1], scratch[0]);
  for (std::size_t i = 2; i + 1 < d; ++i) {
    c.ccx(scratch[i - 2], controls[i], scratch[i - 1]);
  }
  const std::size_t end = c.size();
  c.ccx(scratch[d - 3], controls[d - 1], target);
  c.append_gates(inverse_gates(c.gates(), begin, end));
}

void emit_naive(Circuit &c, const TruthTable &t) {
  const unsigned n = t.n_vars();
  const Qubit y0 = n;
  std::map<std::uint64_t, std::vector<unsigned>> uses;
  for (unsigned o = 0; o < t.r_out(); ++o) {
    if (t.output_is_zero(o)) continue;
    const AnfPolynomial p = anf_from_truth_table(t.output(o));
    for (std::uint64_t a : p.monomials()) uses[a].push_back(o);
  }
  std::size_t need = 0;
  for (const auto &[a, outs] : uses) {
    std::size_t d = static_cast<std::size_t>(std::popcount(a));
    if (d >= 2) need = std::max(need, d - 2 + (outs.size() > 1 ? 1 : 0));
  }
  const Qubit s0 = c.add_ancillas(need);
  std::vector<Qubit> scratch(need);
  for (std::size_t i = 0; i < need; ++i) scratch[i] = s0 + static_cast<Qubit>(i);

  for (const auto &[a, outs] : uses) {
    std::vector<Qubit> v = vars_of(a, n);
    if (v.empty()) {
      for (unsigned o : outs) c.x(y0 + o);
    } else if (v.size() == 1) {
      for (unsigned o : outs) c.cx(v[0], y0 + o);
    } else if (outs.size() == 1) {
      mcx(c, v, y0 + outs[0], scratch);
    } else {
      // Shared monomial: compute once into the last scratch qubit.
      const Qubit m = scratch[v.size() - 2];
      const std::size_t begin = c.size();
      mcx(c, v, m, scratch);
      const std::size_t end = c.size();
      for (unsigned o : outs) c.cx(m, y0 + o);
      c.append_gates(inverse_gates(c.gates(), begin, end));
    }
  }
}

class SelectSwap {
 public:
  SelectSwap(Circuit &c, const TruthTable &t, unsigned s)
      : c_(c), t_(t), n_(t.n_vars()), r_(t.r_out()), s_(s), sel_(n_ - s) {
    const std::size_t lambda = std::size_t{1} << s_;
    reg0_ = c_.add_ancillas(lambda * r_);
    e0_ = c_.add_ancillas(sel_ > 1 ? sel_ - 1 : 0);
  }

  void emit() {
    const std::size_t begin = c_.size();
    iterate(0, kNone, 0);
    swap_network();
    const std::size_t end = c_.size();
    for (unsigned o = 0; o < r_; ++o) c_.cx(reg(0, o), n_ + o);
    c_.append_gates(inverse_gates(c_.gates(), begin, end));
  }

 private:
  static constexpr Qubit kNone = ~Qubit{0};

  Qubit reg(std::size_t block, unsigned o) const {
    return reg0_ + static_cast<Qubit>(block * r_ + o);
  }

  // Any output set on rows [prefix 2^(n-level), (prefix+1) 2^(n-level)).
  bool nonempty(unsigned level, std::uint64_t prefix) const {
    const std::size_t span = std::size_t{1} << (n_ - level);
    for (std::size_t x = prefix * span; x < (prefix + 1) * span; ++x) {
      for (unsigned o = 0; o < r_; ++o) {
        if (t_.get(x, o)) return true;
      }
    }
    return false;
  }

  void write_leaf(Qubit ctrl, std::uint64_t h) {
    const std::size_t lambda = std::size_t{1} << s_;
    for (std::size_t b = 0; b < lambda; ++b) {
      for (unsigned o = 0; o < r_; ++o) {
        if (!t_.get(h * lambda + b, o)) continue;
        if (ctrl == kNone) c_.x(reg(b, o));
        else c_.cx(ctrl, reg(b, o));
      }
    }
  }

  void iterate(unsigned level, Qubit ctrl, std::uint64_t prefix) {
    if (level == sel_) {
      write_leaf(ctrl, prefix);
      return;
    }
    const bool one = nonempty(level + 1, 2 * prefix + 1);
    const bool zero = nonempty(level + 1, 2 * prefix);
    const Qubit a = level;
    if (ctrl == kNone) {
      if (one) iterate(level + 1, a, 2 * prefix + 1);
      if (zero) {
        c_.x(a);
        iterate(level + 1, a, 2 * prefix);
        c_.x(a);
      }
      return;
    }
    const Qubit e = e0_ + level - 1;
    if (one && zero) {
      c_.ccx(ctrl, a, e);
      iterate(level + 1, e, 2 * prefix + 1);
      c_.cx(ctrl, e);
      iterate(level + 1, e, 2 * prefix);
      c_.cx(ctrl, e);
      c_.ccx(ctrl, a, e);
    } else if (one) {
      c_.ccx(ctrl, a, e);
      iterate(level + 1, e, 2 * prefix + 1);
      c_.ccx(ctrl, a, e);
    } else if (zero) {
      c_.x(a);
      c_.ccx(ctrl, a, e);
      iterate(level + 1, e, 2 * prefix);
      c_.ccx(ctrl, a, e);
      c_.x(a);
    }
  }

  void swap_network() {
    const std::size_t lambda = std::size_t{1} << s_;
    for (unsigned i = 0; i < s_; ++i) {
      const Qubit addr = n_ - 1 - i;
      const std::size_t half = std::size_t{1} << i;
      for (std::size_t b = 0; b < lambda; b += 2 * half) {
        for (unsigned o = 0; o < r_; ++o) {
          Qubit p = reg(b, o), q = reg(b + half, o);
          c_.cx(q, p);
          c_.ccx(addr, p, q);
          c_.cx(q, p);
        }
      }
    }
  }

  Circuit &c_;
  const TruthTable &t_;
  unsigned n_, r_, s_, sel_;
  Qubit reg0_ = 0, e0_ = 0;
};

}  // namespace

std::uint64_t select_swap_t_model(unsigned n_vars, unsigned r_out,
                                  unsigned s) {
  const unsigned sel = n_vars - s;
  const std::uint64_t nodes = sel >= 1 ? (std::uint64_t{1} << sel) - 2 : 0;
  const std::uint64_t cswaps = ((std::uint64_t{1} << s) - 1) * r_out;
  // Compute and uncompute: 2 CCX per select node, 1 CCX per CSWAP.
  return 2 * kCcxT * (2 * nodes + cswaps);
}

unsigned select_swap_split(unsigned n_vars, unsigned r_out) {
  unsigned best = 0;
  std::uint64_t best_t = select_swap_t_model(n_vars, r_out, 0);
  for (unsigned s = 1; s <= n_vars; ++s) {
    std::uint64_t t = select_swap_t_model(n_vars, r_out, s);
    if (t < best_t) {
      best = s;
      best_t = t;
    }
  }
  return best;
}

Circuit synthesize_oracle(const TruthTable &t, OracleBackend backend) {
  if (t.n_vars() > 20) {
    throw ResourceLimit("oracle synthesis supports at most 20 variables",
                        {{"n_vars", std::to_string(t.n_vars())}});
  }
  Circuit c(t.n_vars() + t.r_out(), 0);
  bool any = false;
  for (unsigned o = 0; o < t.r_out() && !any; ++o) any = !t.output_is_zero(o);
  if (!any) return c;
  if (backend == OracleBackend::Naive) {
    emit_naive(c, t);
  } else {
    SelectSwap(c, t, select_swap_split(t.n_vars(), t.r_out())).emit();
  }
  return c;
}

}  // namespace csdsynth
